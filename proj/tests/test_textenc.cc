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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "r3d2/engine/game_state.h"
#include "r3d2/rng.h"
#include "r3d2/text/render.h"
#include "r3d2/text/vocab.h"
#include "r3d2/util.h"

using r3d2::SplitMix64;
using r3d2::engine::Card;
using r3d2::engine::CardKnowledge;
using r3d2::engine::GameConfig;
using r3d2::engine::GameState;
using r3d2::engine::Move;
using r3d2::engine::Observation;
using r3d2::engine::VisibleHand;
using r3d2::text::ParseAction;
using r3d2::text::RenderAction;
using r3d2::text::RenderObservation;
using r3d2::text::RenderOptions;
using r3d2::text::Tokenize;
using r3d2::text::Vocab;

namespace {

// True if `longer` equals `shorter` with exactly one contiguous insertion.
bool DiffersByOneInsertion(const std::string& shorter,
                           const std::string& longer) {
  if (longer.size() <= shorter.size()) return false;
  size_t p = 0;
  while (p < shorter.size() && shorter[p] == longer[p]) ++p;
  size_t s = 0;
  while (s < shorter.size() - p &&
         shorter[shorter.size() - 1 - s] == longer[longer.size() - 1 - s]) {
    ++s;
  }
  return p + s >= shorter.size();
}

Observation RandomObservation(SplitMix64& rng, int players) {
  Observation obs;
  obs.players = players;
  obs.colors = 5;
  obs.ranks = 5;
  obs.hint_tokens = static_cast<int>(rng.NextBelow(9));
  obs.life_tokens = 1 + static_cast<int>(rng.NextBelow(3));
  for (int c = 0; c < 5; ++c) {
    obs.fireworks.push_back(static_cast<int>(rng.NextBelow(6)));
  }
  auto random_knowledge = [&] {
    CardKnowledge k;
    if (rng.NextBelow(2)) k.color = static_cast<int>(rng.NextBelow(5));
    if (rng.NextBelow(2)) k.rank = 1 + static_cast<int>(rng.NextBelow(5));
    return k;
  };
  auto random_card = [&] {
    return Card{static_cast<int>(rng.NextBelow(5)),
                1 + static_cast<int>(rng.NextBelow(5))};
  };
  for (int i = 0; i < 5; ++i) obs.own.push_back(random_knowledge());
  for (int p = 1; p < players; ++p) {
    VisibleHand hand;
    for (int i = 0; i < 5; ++i) {
      hand.cards.push_back(random_card());
      hand.knowledge.push_back(random_knowledge());
    }
    obs.others.push_back(hand);
  }
  std::vector<Card> discards;
  for (uint64_t i = 0; i < rng.NextBelow(6); ++i) {
    discards.push_back(random_card());
  }
  obs.discards = discards;
  return obs;
}

}  // namespace

TEST_CASE("observation render follows the template") {
  Observation obs;
  obs.players = 2;
  obs.hint_tokens = 1;
  obs.life_tokens = 3;
  obs.fireworks = {5, 4, 2, 4, 4};
  obs.own = {CardKnowledge{2, 5}, CardKnowledge{2, 3}, CardKnowledge{-1, 5},
             CardKnowledge{2, -1}, CardKnowledge{-1, -1}};
  obs.others.push_back(
      VisibleHand{{{1, 5}, {3, 4}, {3, 2}, {1, 1}, {2, 2}},
                  std::vector<CardKnowledge>(5, CardKnowledge{})});
  obs.discards = std::vector<Card>{{2, 4}, {0, 2}, {1, 1}};

  RenderOptions opts;
  opts.include_player_knowledge = false;
  std::string text = RenderObservation(obs, opts);
  CHECK(text.rfind("1 clue tokens available. 3 life tokens remaining. "
                   "Fireworks display: Red 5, Yellow 4, Green 2, White 4, "
                   "Blue 4.",
                   0) == 0);
  CHECK(text.find("knowledge about own hand: Green 5, Green 3, Unknown 5, "
                  "Green X, Unknown X.") != std::string::npos);
  CHECK(text.find("Player hand: Yellow 5, White 4, White 2, Yellow 1, "
                  "Green 2.") != std::string::npos);
  CHECK(text.find("Discards: Green 4 Red 2 Yellow 1") != std::string::npos);
}

TEST_CASE("empty discard pile renders an empty section") {
  Observation obs;
  obs.players = 2;
  obs.colors = 1;
  obs.hint_tokens = 8;
  obs.life_tokens = 3;
  obs.fireworks = {0};
  obs.own = {CardKnowledge{}};
  obs.others.push_back(VisibleHand{{{0, 1}}, {CardKnowledge{}}});
  obs.discards = std::vector<Card>{};
  std::string text = RenderObservation(obs);
  CHECK(text.find("Discards:") != std::string::npos);
  CHECK(text.substr(text.size() - 9) == "Discards:");
}

TEST_CASE("last action sentence is flag-gated") {
  Observation obs;
  obs.players = 2;
  obs.colors = 1;
  obs.hint_tokens = 8;
  obs.life_tokens = 3;
  obs.fireworks = {0};
  obs.own = {CardKnowledge{}};
  obs.others.push_back(VisibleHand{{{0, 1}}, {CardKnowledge{}}});
  obs.last_action = Move::RevealColor(1, 0);

  RenderOptions on;
  CHECK(RenderObservation(obs, on).find("last action: reveal red 1.") !=
        std::string::npos);
  RenderOptions off;
  off.include_last_action = false;
  CHECK(RenderObservation(obs, off).find("last action") == std::string::npos);
}

TEST_CASE("action grammar matches the canonical strings") {
  CHECK(RenderAction(Move::RevealColor(2, 4)) == "reveal blue 2");
  CHECK(RenderAction(Move::Play(0)) == "play 0");
  CHECK(RenderAction(Move::Discard(3)) == "discard 3");
  CHECK(RenderAction(Move::RevealRank(1, 5)) == "reveal rank 5 1");
}

TEST_CASE("render/parse round-trip over every legal action of every config") {
  for (int players = 2; players <= 5; ++players) {
    GameConfig cfg;
    cfg.players = players;
    for (int i = 0; i < cfg.HandSize(); ++i) {
      for (const Move& m : {Move::Play(i), Move::Discard(i)}) {
        CHECK(ParseAction(RenderAction(m), cfg) == m);
      }
    }
    for (int offset = 1; offset < players; ++offset) {
      for (int c = 0; c < cfg.colors; ++c) {
        Move m = Move::RevealColor(offset, c);
        CHECK(ParseAction(RenderAction(m), cfg) == m);
      }
      for (int r = 1; r <= cfg.ranks; ++r) {
        Move m = Move::RevealRank(offset, r);
        CHECK(ParseAction(RenderAction(m), cfg) == m);
      }
    }
  }
}

TEST_CASE("parse rejects malformed or out-of-range actions") {
  GameConfig cfg;
  cfg.players = 2;
  CHECK_THROWS_AS(ParseAction("play", cfg), r3d2::ProtocolError);
  CHECK_THROWS_AS(ParseAction("play 9", cfg), r3d2::ProtocolError);
  CHECK_THROWS_AS(ParseAction("reveal blue 0", cfg), r3d2::ProtocolError);
  CHECK_THROWS_AS(ParseAction("reveal blue 2", cfg), r3d2::ProtocolError);
  CHECK_THROWS_AS(ParseAction("reveal pink 1", cfg), r3d2::ProtocolError);
  CHECK_THROWS_AS(ParseAction("reveal rank 6 1", cfg), r3d2::ProtocolError);
}

TEST_CASE("tokenizer splits punctuation and digits") {
  Vocab vocab = Vocab::Default();
  auto seq = Tokenize("reveal blue 2", vocab);
  CHECK(seq.ids == std::vector<int>{vocab.id("reveal"), vocab.id("blue"),
                                    vocab.id("2")});
  auto seq2 = Tokenize("Red 5,", vocab);
  CHECK(seq2.ids ==
        std::vector<int>{vocab.id("red"), vocab.id("5"), vocab.id(",")});
  auto seq3 = Tokenize("display: 12", vocab);
  CHECK(seq3.ids == std::vector<int>{vocab.id("display"), vocab.id(":"),
                                     vocab.id("1"), vocab.id("2")});
  CHECK(Tokenize("zebra", vocab).ids == std::vector<int>{r3d2::text::kUnkId});
  CHECK(Tokenize("reveal blue 2", vocab).ids == seq.ids);
}

TEST_CASE("vocabulary closes over rendered observations") {
  Vocab vocab = Vocab::Default();
  SplitMix64 rng(11);
  int unk = 0;
  for (int players = 2; players <= 5; ++players) {
    for (int g = 0; g < 10; ++g) {
      GameConfig cfg;
      cfg.players = players;
      cfg.seed = rng.Next();
      GameState state = GameState::NewGame(cfg);
      while (!state.terminal()) {
        auto moves = state.LegalMoves();
        auto obs = state.Observe(state.current_player());
        for (const RenderOptions& opts :
             {RenderOptions{}, RenderOptions{false, false}}) {
          for (int id : Tokenize(RenderObservation(obs, opts), vocab).ids) {
            if (id == r3d2::text::kUnkId) ++unk;
          }
        }
        for (const auto& m : moves) {
          for (int id : Tokenize(RenderAction(m), vocab).ids) {
            if (id == r3d2::text::kUnkId) ++unk;
          }
        }
        state.Apply(moves[rng.NextBelow(moves.size())]);
      }
    }
  }
  CHECK(unk == 0);
}

TEST_CASE("adding a player inserts exactly one hand section") {
  SplitMix64 rng(17);
  for (int n = 2; n <= 4; ++n) {
    for (int rep = 0; rep < 50; ++rep) {
      Observation obs = RandomObservation(rng, n);
      Observation bigger = obs;
      bigger.players = n + 1;
      VisibleHand extra;
      for (int i = 0; i < 5; ++i) {
        extra.cards.push_back(Card{static_cast<int>(rng.NextBelow(5)),
                                   1 + static_cast<int>(rng.NextBelow(5))});
        extra.knowledge.push_back(CardKnowledge{});
      }
      bigger.others.push_back(extra);
      std::string small_text = RenderObservation(obs);
      std::string big_text = RenderObservation(bigger);
      CHECK(DiffersByOneInsertion(small_text, big_text));
    }
  }
}

TEST_CASE("pad_batch pads right with zeros and masks live tokens") {
  using r3d2::text::PadBatch;
  using r3d2::text::TokenSequence;
  std::vector<TokenSequence> seqs = {TokenSequence{{3, 4}, ""},
                                     TokenSequence{{5}, ""}};
  auto batch = PadBatch(seqs, 3);
  CHECK(batch.ids.rows() == 2);
  CHECK(batch.ids(0, 0) == 3);
  CHECK(batch.ids(0, 1) == 4);
  CHECK(batch.ids(0, 2) == 0);
  CHECK(batch.ids(1, 0) == 5);
  CHECK(batch.ids(1, 1) == 0);
  CHECK(batch.mask(0, 0) == 1);
  CHECK(batch.mask(0, 1) == 1);
  CHECK(batch.mask(0, 2) == 0);
  CHECK(batch.mask(1, 0) == 1);
  CHECK(batch.mask(1, 1) == 0);

  CHECK(PadBatch({}, 3).ids.rows() == 0);

  auto exact = PadBatch({TokenSequence{{1, 2, 3}, ""}}, 3);
  CHECK(exact.mask.sum() == 3);

  CHECK_THROWS_AS(PadBatch({TokenSequence{{1, 2, 3, 4}, ""}}, 3),
                  r3d2::TruncationError);
}

TEST_CASE("vocab serialization round-trips and hashes stably") {
  Vocab vocab = Vocab::Default();
  std::string text = vocab.ToText();
  Vocab reload = Vocab::FromLines([&] {
    std::vector<std::string> lines;
    std::string line;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(line);
        line.clear();
      } else {
        line.push_back(c);
      }
    }
    return lines;
  }());
  CHECK(reload.size() == vocab.size());
  CHECK(reload.Hash() == vocab.Hash());
  CHECK(reload.id("reveal") == vocab.id("reveal"));
  CHECK(vocab.token(r3d2::text::kPadId) == "<pad>");
  CHECK(r3d2::text::kPadId == 0);
}
