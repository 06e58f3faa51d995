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

#ifndef R3D2_TRAIN_ACTOR_H_
#define R3D2_TRAIN_ACTOR_H_

#include <vector>

#include "r3d2/engine/game_config.h"
#include "r3d2/nn/qnet.h"
#include "r3d2/replay/trajectory.h"
#include "r3d2/rng.h"
#include "r3d2/text/render.h"
#include "r3d2/text/vocab.h"

namespace r3d2 {
namespace train {

// Plays full self-play games: every seat runs the same parameter snapshot,
// keeps its own recurrent state, and acts epsilon-greedy over the legal
// candidates. Each seat's action-observation history becomes one trajectory.
class SelfPlayActor {
 public:
  struct Options {
    engine::GameConfig game;  // seed field is ignored; per-game seeds rule
    text::RenderOptions render;
    double epsilon = 0.1;
  };

  struct GameResult {
    std::vector<replay::Trajectory> trajectories;  // one per seat
    double episode_return = 0;
    int score = 0;
    bool bombed = false;
    int turns = 0;
  };

  SelfPlayActor(const Options& options, const text::Vocab& vocab,
                uint64_t exploration_seed);

  GameResult PlayGame(const nn::QNetParams<float>& params,
                      uint64_t game_seed);

 private:
  Options options_;
  const text::Vocab& vocab_;
  SplitMix64 rng_;
};

}  // namespace train
}  // namespace r3d2

#endif  // R3D2_TRAIN_ACTOR_H_
