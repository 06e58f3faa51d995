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

#ifndef R3D2_ENGINE_OBSERVATION_H_
#define R3D2_ENGINE_OBSERVATION_H_

#include <optional>
#include <vector>

#include "r3d2/engine/card.h"
#include "r3d2/engine/move.h"

namespace r3d2 {
namespace engine {

// Another player's hand as we see it: the cards themselves plus the hint
// knowledge that player holds about them.
struct VisibleHand {
  std::vector<Card> cards;
  std::vector<CardKnowledge> knowledge;
};

// One player's partial view of the state. Own cards appear only through
// hint knowledge, never in plain form.
struct Observation {
  int players = 2;
  int colors = 5;
  int ranks = 5;
  int hint_tokens = 0;
  int life_tokens = 0;
  std::vector<int> fireworks;             // per color, height 0..ranks
  std::vector<CardKnowledge> own;         // own hand, hint knowledge only
  std::vector<VisibleHand> others;        // seat-offset order 1..players-1
  std::optional<std::vector<Card>> discards;  // present iff config enables
  std::vector<Move> legal_moves;
  std::optional<Move> last_action;        // previous turn's move, actor frame
};

}  // namespace engine
}  // namespace r3d2

#endif  // R3D2_ENGINE_OBSERVATION_H_
