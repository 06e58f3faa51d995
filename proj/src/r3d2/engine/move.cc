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

#include "r3d2/engine/move.h"

namespace r3d2 {
namespace engine {

std::string Move::DebugString() const {
  switch (type_) {
    case Type::kPlay:
      return "Play(" + std::to_string(card_index_) + ")";
    case Type::kDiscard:
      return "Discard(" + std::to_string(card_index_) + ")";
    case Type::kRevealColor:
      return "RevealColor(offset=" + std::to_string(target_offset_) +
             ", color=" + std::to_string(color_) + ")";
    case Type::kRevealRank:
      return "RevealRank(offset=" + std::to_string(target_offset_) +
             ", rank=" + std::to_string(rank_) + ")";
  }
  return "Move(?)";
}

}  // namespace engine
}  // namespace r3d2
