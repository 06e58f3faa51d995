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

#ifndef R3D2_ENGINE_MOVE_H_
#define R3D2_ENGINE_MOVE_H_

#include <string>

namespace r3d2 {
namespace engine {

// One player action. Reveal targets are identified by relative seat offset
// (1..players-1, clockwise from the actor), which keeps the action space
// independent of the absolute seat layout.
class Move {
 public:
  enum class Type { kPlay, kDiscard, kRevealColor, kRevealRank };

  static Move Play(int card_index) {
    return Move(Type::kPlay, card_index, 0, -1, -1);
  }
  static Move Discard(int card_index) {
    return Move(Type::kDiscard, card_index, 0, -1, -1);
  }
  static Move RevealColor(int target_offset, int color) {
    return Move(Type::kRevealColor, -1, target_offset, color, -1);
  }
  static Move RevealRank(int target_offset, int rank) {
    return Move(Type::kRevealRank, -1, target_offset, -1, rank);
  }

  Move() = default;

  Type type() const { return type_; }
  int card_index() const { return card_index_; }
  int target_offset() const { return target_offset_; }
  int color() const { return color_; }
  int rank() const { return rank_; }

  bool operator==(const Move& o) const {
    return type_ == o.type_ && card_index_ == o.card_index_ &&
           target_offset_ == o.target_offset_ && color_ == o.color_ &&
           rank_ == o.rank_;
  }

  std::string DebugString() const;

 private:
  Move(Type type, int card_index, int target_offset, int color, int rank)
      : type_(type),
        card_index_(card_index),
        target_offset_(target_offset),
        color_(color),
        rank_(rank) {}

  Type type_ = Type::kPlay;
  int card_index_ = -1;
  int target_offset_ = 0;
  int color_ = -1;
  int rank_ = -1;
};

}  // namespace engine
}  // namespace r3d2

#endif  // R3D2_ENGINE_MOVE_H_
