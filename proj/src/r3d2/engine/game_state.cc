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

#include "r3d2/engine/game_state.h"

#include <algorithm>
#include <utility>

#include "r3d2/rng.h"
#include "r3d2/util.h"

namespace r3d2 {
namespace engine {

namespace {

std::vector<Card> Composition(const GameConfig& config) {
  std::vector<Card> deck;
  deck.reserve(config.DeckSize());
  for (int c = 0; c < config.colors; ++c) {
    for (int r = 1; r <= config.ranks; ++r) {
      for (int n = 0; n < config.CardsPerRank(r); ++n) {
        deck.push_back(Card{c, r});
      }
    }
  }
  return deck;
}

bool SameComposition(const GameConfig& config, std::vector<Card> cards) {
  std::vector<Card> expect = Composition(config);
  auto key = [](const Card& a, const Card& b) {
    return a.color != b.color ? a.color < b.color : a.rank < b.rank;
  };
  std::sort(cards.begin(), cards.end(), key);
  std::sort(expect.begin(), expect.end(), key);
  return cards == expect;
}

}  // namespace

GameState::GameState(const GameConfig& config, std::vector<Card> deck)
    : config_(config),
      deck_(std::move(deck)),
      fireworks_(config.colors, 0),
      hint_tokens_(config.max_hint_tokens),
      life_tokens_(config.max_life_tokens) {
  hands_.resize(config_.players);
  knowledge_.resize(config_.players);
  for (int i = 0; i < config_.HandSize(); ++i) {
    for (int p = 0; p < config_.players; ++p) {
      hands_[p].push_back(*Draw());
      knowledge_[p].push_back(CardKnowledge{});
    }
  }
}

GameState GameState::NewGame(const GameConfig& config) {
  config.Validate();
  std::vector<Card> deck = Composition(config);
  SplitMix64 rng(config.seed);
  for (size_t i = deck.size() - 1; i > 0; --i) {
    size_t j = rng.NextBelow(i + 1);
    std::swap(deck[i], deck[j]);
  }
  return GameState(config, std::move(deck));
}

GameState GameState::FromDeck(const GameConfig& config,
                              const std::vector<Card>& draw_order) {
  config.Validate();
  if (!SameComposition(config, draw_order)) {
    throw ConfigError("draw order is not a permutation of the composition");
  }
  return GameState(config, draw_order);
}

std::optional<Card> GameState::Draw() {
  if (next_draw_ >= static_cast<int>(deck_.size())) return std::nullopt;
  return deck_[next_draw_++];
}

std::vector<Move> GameState::LegalMoves() const {
  if (terminal_) throw ProtocolError("legal moves requested on terminal state");
  std::vector<Move> moves;
  const auto& hand = hands_[current_player_];
  for (int i = 0; i < static_cast<int>(hand.size()); ++i) {
    moves.push_back(Move::Play(i));
  }
  if (hint_tokens_ < config_.max_hint_tokens) {
    for (int i = 0; i < static_cast<int>(hand.size()); ++i) {
      moves.push_back(Move::Discard(i));
    }
  }
  if (hint_tokens_ > 0) {
    for (int offset = 1; offset < config_.players; ++offset) {
      const auto& target = hands_[(current_player_ + offset) % config_.players];
      for (int c = 0; c < config_.colors; ++c) {
        if (std::any_of(target.begin(), target.end(),
                        [c](const Card& card) { return card.color == c; })) {
          moves.push_back(Move::RevealColor(offset, c));
        }
      }
      for (int r = 1; r <= config_.ranks; ++r) {
        if (std::any_of(target.begin(), target.end(),
                        [r](const Card& card) { return card.rank == r; })) {
          moves.push_back(Move::RevealRank(offset, r));
        }
      }
    }
  }
  return moves;
}

bool GameState::MoveIsLegal(const Move& move) const {
  std::vector<Move> legal = LegalMoves();
  return std::find(legal.begin(), legal.end(), move) != legal.end();
}

StepResult GameState::Apply(const Move& move) {
  if (terminal_) throw ProtocolError("move applied to terminal state");
  if (!MoveIsLegal(move)) {
    throw IllegalMoveError("illegal move: " + move.DebugString());
  }

  double reward = 0;
  auto& hand = hands_[current_player_];
  auto& know = knowledge_[current_player_];

  switch (move.type()) {
    case Move::Type::kPlay: {
      Card card = hand[move.card_index()];
      hand.erase(hand.begin() + move.card_index());
      know.erase(know.begin() + move.card_index());
      if (card.rank == fireworks_[card.color] + 1) {
        fireworks_[card.color] = card.rank;
        score_ += 1;
        reward += 1;
        if (card.rank == config_.ranks &&
            hint_tokens_ < config_.max_hint_tokens) {
          ++hint_tokens_;  // completing a color restores a hint token
        }
      } else {
        discards_.push_back(card);
        --life_tokens_;
      }
      if (auto drawn = Draw()) {
        hand.push_back(*drawn);
        know.push_back(CardKnowledge{});
      }
      break;
    }
    case Move::Type::kDiscard: {
      Card card = hand[move.card_index()];
      hand.erase(hand.begin() + move.card_index());
      know.erase(know.begin() + move.card_index());
      discards_.push_back(card);
      ++hint_tokens_;
      if (auto drawn = Draw()) {
        hand.push_back(*drawn);
        know.push_back(CardKnowledge{});
      }
      break;
    }
    case Move::Type::kRevealColor: {
      --hint_tokens_;
      int target = (current_player_ + move.target_offset()) % config_.players;
      for (size_t i = 0; i < hands_[target].size(); ++i) {
        if (hands_[target][i].color == move.color()) {
          knowledge_[target][i].color = move.color();
        }
      }
      break;
    }
    case Move::Type::kRevealRank: {
      --hint_tokens_;
      int target = (current_player_ + move.target_offset()) % config_.players;
      for (size_t i = 0; i < hands_[target].size(); ++i) {
        if (hands_[target][i].rank == move.rank()) {
          knowledge_[target][i].rank = move.rank();
        }
      }
      break;
    }
  }

  bool bombed = life_tokens_ == 0;
  bool complete = score_ == config_.MaxScore();

  if (bombed) {
    terminal_ = true;
    if (config_.bomb_out_zeroes_score) {
      reward -= score_;  // zeroes the episode return
    }
  } else if (complete) {
    terminal_ = true;
  } else if (deck_size() == 0) {
    if (!final_countdown_.has_value()) {
      // The turn that drew the last card is not counted; every player gets
      // exactly one more turn.
      final_countdown_ = config_.players;
    } else {
      --*final_countdown_;
      if (*final_countdown_ == 0) terminal_ = true;
    }
  }

  last_action_ = move;
  current_player_ = (current_player_ + 1) % config_.players;
  ++turn_count_;
  return StepResult{reward, terminal_};
}

Observation GameState::Observe(int player) const {
  if (player < 0 || player >= config_.players) {
    throw ProtocolError("observer index out of range");
  }
  Observation obs;
  obs.players = config_.players;
  obs.colors = config_.colors;
  obs.ranks = config_.ranks;
  obs.hint_tokens = hint_tokens_;
  obs.life_tokens = life_tokens_;
  obs.fireworks = fireworks_;
  obs.own = knowledge_[player];
  for (int offset = 1; offset < config_.players; ++offset) {
    int p = (player + offset) % config_.players;
    obs.others.push_back(VisibleHand{hands_[p], knowledge_[p]});
  }
  if (config_.include_discards_in_obs) {
    obs.discards = discards_;
  }
  if (!terminal_) {
    // Legal moves for the observed player as acting player. For the player
    // to move this is the true legal set.
    if (player == current_player_) {
      obs.legal_moves = LegalMoves();
    } else {
      GameState hypothetical = *this;
      hypothetical.current_player_ = player;
      obs.legal_moves = hypothetical.LegalMoves();
    }
  }
  obs.last_action = last_action_;
  return obs;
}

}  // namespace engine
}  // namespace r3d2
