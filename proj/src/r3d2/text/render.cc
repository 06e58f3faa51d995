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

#include "r3d2/text/render.h"

#include <array>
#include <sstream>
#include <vector>

#include "r3d2/util.h"

namespace r3d2 {
namespace text {

namespace {

const std::array<std::string, 5> kColors = {"red", "yellow", "green", "white",
                                            "blue"};
const std::array<std::string, 5> kColorsCap = {"Red", "Yellow", "Green",
                                               "White", "Blue"};

std::string KnowledgeItem(const engine::CardKnowledge& k) {
  std::string color = k.color >= 0 ? ColorWordCapitalized(k.color) : "Unknown";
  std::string rank = k.rank >= 0 ? std::to_string(k.rank) : "X";
  return color + " " + rank;
}

std::string CardItem(const engine::Card& c) {
  return ColorWordCapitalized(c.color) + " " + std::to_string(c.rank);
}

template <typename Item, typename Fn>
std::string CommaList(const std::vector<Item>& items, Fn&& fn) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += fn(items[i]);
  }
  return out;
}

}  // namespace

const std::string& ColorWord(int color) { return kColors.at(color); }
const std::string& ColorWordCapitalized(int color) {
  return kColorsCap.at(color);
}

std::string RenderObservation(const engine::Observation& obs,
                              const RenderOptions& options) {
  std::ostringstream out;
  out << obs.hint_tokens << " clue tokens available. ";
  out << obs.life_tokens << " life tokens remaining. ";

  out << "Fireworks display: ";
  for (int c = 0; c < obs.colors; ++c) {
    if (c > 0) out << ", ";
    out << ColorWordCapitalized(c) << " " << obs.fireworks[c];
  }
  out << ".";

  out << " knowledge about own hand: "
      << CommaList(obs.own, KnowledgeItem) << ".";

  for (const auto& other : obs.others) {
    out << " Player hand: " << CommaList(other.cards, CardItem) << ".";
    if (options.include_player_knowledge) {
      out << " Player knowledge: " << CommaList(other.knowledge, KnowledgeItem)
          << ".";
    }
  }

  if (obs.discards.has_value()) {
    out << " Discards:";
    for (const auto& card : *obs.discards) {
      out << " " << CardItem(card);
    }
  }

  if (options.include_last_action && obs.last_action.has_value()) {
    out << " last action: " << RenderAction(*obs.last_action) << ".";
  }
  return out.str();
}

std::string RenderAction(const engine::Move& move) {
  using Type = engine::Move::Type;
  switch (move.type()) {
    case Type::kPlay:
      return "play " + std::to_string(move.card_index());
    case Type::kDiscard:
      return "discard " + std::to_string(move.card_index());
    case Type::kRevealColor:
      return "reveal " + ColorWord(move.color()) + " " +
             std::to_string(move.target_offset());
    case Type::kRevealRank:
      return "reveal rank " + std::to_string(move.rank()) + " " +
             std::to_string(move.target_offset());
  }
  throw ProtocolError("unrenderable move");
}

engine::Move ParseAction(const std::string& str,
                         const engine::GameConfig& config) {
  std::istringstream in(str);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);

  auto fail = [&str]() -> engine::Move {
    throw ProtocolError("cannot parse action: \"" + str + "\"");
  };
  auto parse_int = [&](const std::string& s, int lo, int hi) {
    if (s.empty() || s.size() > 2) fail();
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail();
    }
    int v = std::stoi(s);
    if (v < lo || v > hi) fail();
    return v;
  };

  if (words.size() == 2 && words[0] == "play") {
    return engine::Move::Play(parse_int(words[1], 0, config.HandSize() - 1));
  }
  if (words.size() == 2 && words[0] == "discard") {
    return engine::Move::Discard(
        parse_int(words[1], 0, config.HandSize() - 1));
  }
  if (words.size() == 4 && words[0] == "reveal" && words[1] == "rank") {
    int rank = parse_int(words[2], 1, config.ranks);
    int offset = parse_int(words[3], 1, config.players - 1);
    return engine::Move::RevealRank(offset, rank);
  }
  if (words.size() == 3 && words[0] == "reveal") {
    for (int c = 0; c < config.colors; ++c) {
      if (words[1] == kColors[c]) {
        int offset = parse_int(words[2], 1, config.players - 1);
        return engine::Move::RevealColor(offset, c);
      }
    }
  }
  return fail();
}

}  // namespace text
}  // namespace r3d2
