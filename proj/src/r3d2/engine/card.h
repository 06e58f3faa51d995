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

#ifndef R3D2_ENGINE_CARD_H_
#define R3D2_ENGINE_CARD_H_

namespace r3d2 {
namespace engine {

// Ranks are 1-based (1..ranks); colors are 0-based (0..colors-1).
struct Card {
  int color = -1;
  int rank = -1;

  bool operator==(const Card& o) const {
    return color == o.color && rank == o.rank;
  }
};

// What the owner knows about one of their cards from hints; -1 = unknown.
struct CardKnowledge {
  int color = -1;
  int rank = -1;

  bool operator==(const CardKnowledge& o) const {
    return color == o.color && rank == o.rank;
  }
};

}  // namespace engine
}  // namespace r3d2

#endif  // R3D2_ENGINE_CARD_H_
