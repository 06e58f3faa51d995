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

#ifndef R3D2_TRAIN_EPSILON_H_
#define R3D2_TRAIN_EPSILON_H_

#include <cmath>

#include "r3d2/util.h"

namespace r3d2 {
namespace train {

// Fixed per-actor exploration ladder: eps_i = 0.1^(1 + 7i/(n-1)).
inline double EpsilonForActor(int i, int n) {
  if (i < 0 || i >= n) throw ProtocolError("actor index out of range");
  if (n == 1) return 0.1;
  double exponent = 1.0 + 7.0 * static_cast<double>(i) /
                              static_cast<double>(n - 1);
  return std::pow(0.1, exponent);
}

}  // namespace train
}  // namespace r3d2

#endif  // R3D2_TRAIN_EPSILON_H_
