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

#include "r3d2/train/td.h"

#include <cstddef>

#include "r3d2/util.h"

namespace r3d2 {
namespace train {

double DoubleDqnTarget(double reward, double gamma,
                       const std::vector<float>& online_next,
                       const std::vector<float>& target_next) {
  if (online_next.empty() || online_next.size() != target_next.size()) {
    throw ProtocolError("double-DQN candidate lists are misaligned");
  }
  size_t best = 0;
  for (size_t i = 1; i < online_next.size(); ++i) {
    if (online_next[i] > online_next[best]) best = i;
  }
  return reward + gamma * static_cast<double>(target_next[best]);
}

std::vector<float> ComputeTargets(
    const std::vector<std::vector<float>>& q_online,
    const std::vector<std::vector<float>>& q_target,
    const std::vector<float>& rewards, double gamma, int n_step) {
  const int live = static_cast<int>(q_online.size());
  if (static_cast<int>(q_target.size()) != live ||
      static_cast<int>(rewards.size()) < live) {
    throw ProtocolError("target computation stream lengths do not match");
  }
  if (n_step < 1) throw ProtocolError("n_step must be >= 1");

  std::vector<float> targets(live);
  for (int t = 0; t < live; ++t) {
    int boot = t + n_step;  // step whose Q bootstraps the tail
    double y = 0;
    double discount = 1.0;
    for (int j = t; j < live && j < boot; ++j) {
      y += discount * static_cast<double>(rewards[j]);
      discount *= gamma;
    }
    if (boot < live) {
      y += discount * DoubleDqnTarget(0.0, 1.0, q_online[boot], q_target[boot]);
    }
    targets[t] = static_cast<float>(y);
  }
  return targets;
}

}  // namespace train
}  // namespace r3d2
