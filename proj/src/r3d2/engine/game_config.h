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

#ifndef R3D2_ENGINE_GAME_CONFIG_H_
#define R3D2_ENGINE_GAME_CONFIG_H_

#include <cstdint>

namespace r3d2 {
namespace engine {

struct GameConfig {
  int players = 2;
  int colors = 5;
  int ranks = 5;
  int hand_size = 0;  // 0 = standard rule: 5 for 2-3 players, 4 for 4-5
  int max_hint_tokens = 8;
  int max_life_tokens = 3;
  uint64_t seed = 0;
  bool include_discards_in_obs = true;
  bool bomb_out_zeroes_score = true;

  int HandSize() const {
    if (hand_size > 0) return hand_size;
    return players <= 3 ? 5 : 4;
  }

  // Standard composition per color: three 1s, one top rank, two of the rest.
  int CardsPerRank(int rank) const {
    if (rank == 1) return 3;
    if (rank == ranks) return 1;
    return 2;
  }

  int CardsPerColor() const {
    int n = 0;
    for (int r = 1; r <= ranks; ++r) n += CardsPerRank(r);
    return n;
  }

  int DeckSize() const { return colors * CardsPerColor(); }
  int MaxScore() const { return colors * ranks; }

  // Throws ConfigError on out-of-range players or a deck too small to deal.
  void Validate() const;
};

}  // namespace engine
}  // namespace r3d2

#endif  // R3D2_ENGINE_GAME_CONFIG_H_
