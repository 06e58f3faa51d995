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

#ifndef R3D2_TEXT_RENDER_H_
#define R3D2_TEXT_RENDER_H_

#include <string>

#include "r3d2/engine/game_config.h"
#include "r3d2/engine/move.h"
#include "r3d2/engine/observation.h"

namespace r3d2 {
namespace text {

struct RenderOptions {
  // Render the hint knowledge teammates hold about their own hands.
  bool include_player_knowledge = true;
  // Append the previous turn's action as a trailing sentence so the
  // action-observation history carries other players' moves.
  bool include_last_action = true;
};

// Fixed section order: clue tokens, life tokens, fireworks display, own-hand
// knowledge, one hand section per other player in seat-offset order, discards
// (when present in the observation), last action (when enabled). Adding a
// player only appends one more hand section.
std::string RenderObservation(const engine::Observation& obs,
                              const RenderOptions& options = {});

// Canonical lowercase grammar: "play <i>", "discard <i>",
// "reveal <color> <offset>", "reveal rank <r> <offset>".
std::string RenderAction(const engine::Move& move);

// Exact inverse of RenderAction; validates ranges against the config.
// Throws ProtocolError on malformed or out-of-range input.
engine::Move ParseAction(const std::string& str,
                         const engine::GameConfig& config);

// Canonical color spellings; capitalized variants appear in observations,
// lowercase in actions. Index must be < 5.
const std::string& ColorWord(int color);
const std::string& ColorWordCapitalized(int color);

}  // namespace text
}  // namespace r3d2

#endif  // R3D2_TEXT_RENDER_H_
