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

#ifndef R3D2_REPLAY_SUM_TREE_H_
#define R3D2_REPLAY_SUM_TREE_H_

#include <vector>

namespace r3d2 {
namespace replay {

// Binary tree of priority partial sums over a fixed number of slots.
// Internal nodes are recomputed from their children on every update, so each
// parent equals the exact f64 sum of its children at all times.
class SumTree {
 public:
  explicit SumTree(int capacity);

  void Set(int index, double value);
  double Get(int index) const;
  double Total() const { return nodes_[1]; }
  int capacity() const { return capacity_; }

  // Index of the slot owning the given prefix mass in [0, Total()).
  int Find(double mass) const;

  // Exact internal-consistency scan (parent == left + right, bitwise).
  bool ParentsConsistent() const;

 private:
  int capacity_;
  int leaves_;  // power of two
  std::vector<double> nodes_;
};

}  // namespace replay
}  // namespace r3d2

#endif  // R3D2_REPLAY_SUM_TREE_H_
