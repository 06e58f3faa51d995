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

#ifndef R3D2_NN_EPISODE_H_
#define R3D2_NN_EPISODE_H_

#include <vector>

#include "r3d2/util.h"

namespace r3d2 {
namespace nn {

// One seat's action-observation history as aligned token streams. Steps with
// an empty observation are padding: everything at or after the first empty
// observation is ignored by the forward pass and carries no loss.
struct EpisodeTokens {
  std::vector<std::vector<int>> obs;                 // per step
  std::vector<std::vector<std::vector<int>>> cands;  // per step candidates
  std::vector<int> chosen;                           // index into cands[t]
  std::vector<float> rewards;                        // team reward folded
                                                     // onto this seat's turn

  int size() const { return static_cast<int>(obs.size()); }

  int LiveLength() const {
    for (int t = 0; t < size(); ++t) {
      if (obs[t].empty()) return t;
    }
    return size();
  }

  void Validate() const {
    if (obs.size() != cands.size() || obs.size() != chosen.size() ||
        obs.size() != rewards.size()) {
      throw ProtocolError("episode stream lengths do not match");
    }
    for (int t = 0; t < LiveLength(); ++t) {
      if (cands[t].empty()) {
        throw ProtocolError("live step has no candidate actions");
      }
      if (chosen[t] < 0 || chosen[t] >= static_cast<int>(cands[t].size())) {
        throw ProtocolError("chosen index out of candidate range");
      }
    }
  }
};

}  // namespace nn
}  // namespace r3d2

#endif  // R3D2_NN_EPISODE_H_
