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

#ifndef R3D2_TRAIN_TD_H_
#define R3D2_TRAIN_TD_H_

#include <vector>

namespace r3d2 {
namespace train {

// Double-DQN bootstrap: the online network selects the next action, the
// target network evaluates it. Both lists are Q values over the next step's
// legal candidates in the same order.
double DoubleDqnTarget(double reward, double gamma,
                       const std::vector<float>& online_next,
                       const std::vector<float>& target_next);

// Per-step targets for one seat's episode. The last live step is terminal
// and bootstrap-free; earlier steps bootstrap n_step turns ahead (clipped at
// the episode end, where the tail is pure reward).
std::vector<float> ComputeTargets(
    const std::vector<std::vector<float>>& q_online,
    const std::vector<std::vector<float>>& q_target,
    const std::vector<float>& rewards, double gamma, int n_step);

}  // namespace train
}  // namespace r3d2

#endif  // R3D2_TRAIN_TD_H_
