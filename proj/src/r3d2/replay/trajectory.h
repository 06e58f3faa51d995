// Copyright 2026 The R3D2 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef R3D2_REPLAY_TRAJECTORY_H_
#define R3D2_REPLAY_TRAJECTORY_H_

#include "r3d2/nn/episode.h"

namespace r3d2 {
namespace replay {

// One seat's episode, the replay unit. Trajectories from different player
// counts coexist in one buffer.
struct Trajectory {
  nn::EpisodeTokens tokens;
  int player_count = 0;
};

}  // namespace replay
}  // namespace r3d2

#endif  // R3D2_REPLAY_TRAJECTORY_H_
