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

#include "r3d2/replay/sum_tree.h"

#include "r3d2/util.h"

namespace r3d2 {
namespace replay {

SumTree::SumTree(int capacity) : capacity_(capacity) {
  R3D2_CHECK(capacity > 0, "sum tree capacity must be positive");
  leaves_ = 1;
  while (leaves_ < capacity) leaves_ <<= 1;
  nodes_.assign(2 * leaves_, 0.0);
}

void SumTree::Set(int index, double value) {
  R3D2_CHECK(index >= 0 && index < capacity_, "slot index out of range");
  R3D2_CHECK(value >= 0.0, "priorities must be non-negative");
  int node = leaves_ + index;
  nodes_[node] = value;
  for (node >>= 1; node >= 1; node >>= 1) {
    nodes_[node] = nodes_[2 * node] + nodes_[2 * node + 1];
  }
}

double SumTree::Get(int index) const {
  R3D2_CHECK(index >= 0 && index < capacity_, "slot index out of range");
  return nodes_[leaves_ + index];
}

int SumTree::Find(double mass) const {
  R3D2_CHECK(Total() > 0.0, "cannot sample from an empty tree");
  if (mass < 0) mass = 0;
  int node = 1;
  while (node < leaves_) {
    double left = nodes_[2 * node];
    if (mass < left) {
      node = 2 * node;
    } else {
      mass -= left;
      node = 2 * node + 1;
    }
  }
  int index = node - leaves_;
  // Guard the fp edges: a rounding tail can land past the last live slot or
  // on a zero-priority leaf; snap to the nearest sampleable one.
  if (index >= capacity_) index = capacity_ - 1;
  if (nodes_[leaves_ + index] == 0.0) {
    int j = index;
    while (j > 0 && nodes_[leaves_ + j] == 0.0) --j;
    if (nodes_[leaves_ + j] == 0.0) {
      j = index;
      while (j < capacity_ - 1 && nodes_[leaves_ + j] == 0.0) ++j;
    }
    index = j;
  }
  return index;
}

bool SumTree::ParentsConsistent() const {
  for (int node = 1; node < leaves_; ++node) {
    if (nodes_[node] != nodes_[2 * node] + nodes_[2 * node + 1]) return false;
  }
  return true;
}

}  // namespace replay
}  // namespace r3d2
