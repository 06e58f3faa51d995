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

#ifndef R3D2_ENGINE_GAME_STATE_H_
#define R3D2_ENGINE_GAME_STATE_H_

#include <optional>
#include <vector>

#include "r3d2/engine/card.h"
#include "r3d2/engine/game_config.h"
#include "r3d2/engine/move.h"
#include "r3d2/engine/observation.h"

namespace r3d2 {
namespace engine {

struct StepResult {
  double reward = 0;
  bool terminal = false;
};

// Full hidden state of one Hanabi game. Deterministic: randomness enters
// only through the seeded shuffle in NewGame. Value semantics; one logical
// owner mutates it via Apply.
class GameState {
 public:
  // Shuffles the standard composition with SplitMix64(config.seed) and deals
  // round-robin, one card at a time starting with player 0.
  static GameState NewGame(const GameConfig& config);

  // Deals from an explicit draw order (draw_order[0] drawn first). The order
  // must be a permutation of the config's composition; used by scripted and
  // conformance tests.
  static GameState FromDeck(const GameConfig& config,
                            const std::vector<Card>& draw_order);

  // Enumerated in a fixed order: Play by index, Discard by index (omitted at
  // full hint tokens), then per target offset color reveals before rank
  // reveals, both restricted to values present in the target's hand.
  std::vector<Move> LegalMoves() const;

  // Applies one move, advances the turn, returns the team reward and the
  // terminal flag. Throws IllegalMoveError if the move is not legal and
  // ProtocolError if the game is over.
  StepResult Apply(const Move& move);

  Observation Observe(int player) const;

  const GameConfig& config() const { return config_; }
  int deck_size() const { return static_cast<int>(deck_.size()) - next_draw_; }
  std::vector<Card> RemainingDeck() const {
    return std::vector<Card>(deck_.begin() + next_draw_, deck_.end());
  }
  const std::vector<std::vector<Card>>& hands() const { return hands_; }
  const std::vector<std::vector<CardKnowledge>>& knowledge() const {
    return knowledge_;
  }
  const std::vector<int>& fireworks() const { return fireworks_; }
  const std::vector<Card>& discards() const { return discards_; }
  int hint_tokens() const { return hint_tokens_; }
  int life_tokens() const { return life_tokens_; }
  int current_player() const { return current_player_; }
  int score() const { return score_; }
  bool terminal() const { return terminal_; }
  std::optional<int> final_countdown() const { return final_countdown_; }
  int turn_count() const { return turn_count_; }
  const std::optional<Move>& last_action() const { return last_action_; }

 private:
  GameState(const GameConfig& config, std::vector<Card> deck);

  bool MoveIsLegal(const Move& move) const;
  std::optional<Card> Draw();

  GameConfig config_;
  std::vector<Card> deck_;  // draw order; next_draw_ indexes the top
  int next_draw_ = 0;
  std::vector<std::vector<Card>> hands_;
  std::vector<std::vector<CardKnowledge>> knowledge_;
  std::vector<int> fireworks_;
  std::vector<Card> discards_;  // chronological
  int hint_tokens_ = 0;
  int life_tokens_ = 0;
  int current_player_ = 0;
  int score_ = 0;
  std::optional<int> final_countdown_;
  bool terminal_ = false;
  int turn_count_ = 0;
  std::optional<Move> last_action_;
};

}  // namespace engine
}  // namespace r3d2

#endif  // R3D2_ENGINE_GAME_STATE_H_
