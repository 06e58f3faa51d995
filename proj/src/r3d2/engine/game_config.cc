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

#include "r3d2/engine/game_config.h"

#include <string>

#include "r3d2/util.h"

namespace r3d2 {
namespace engine {

void GameConfig::Validate() const {
  if (players < 2 || players > 5) {
    throw ConfigError("players must be in [2,5], got " +
                      std::to_string(players));
  }
  if (colors < 1 || colors > 5) {
    throw ConfigError("colors must be in [1,5], got " +
                      std::to_string(colors));
  }
  if (ranks < 1 || ranks > 5) {
    throw ConfigError("ranks must be in [1,5], got " + std::to_string(ranks));
  }
  if (hand_size < 0 || HandSize() < 1) {
    throw ConfigError("invalid hand size");
  }
  if (max_hint_tokens < 1 || max_life_tokens < 1) {
    throw ConfigError("token maxima must be positive");
  }
  if (DeckSize() < players * HandSize()) {
    throw ConfigError("deck of " + std::to_string(DeckSize()) +
                      " cards cannot deal " + std::to_string(players) + "x" +
                      std::to_string(HandSize()) + " hands");
  }
}

}  // namespace engine
}  // namespace r3d2
