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

#include "r3d2/eval/replay_log.h"

#include <fstream>
#include <sstream>

#include "r3d2/engine/game_state.h"
#include "r3d2/text/render.h"
#include "r3d2/util.h"

namespace r3d2 {
namespace eval {

void WriteReplayLog(const std::string& path, const engine::GameConfig& config,
                    const std::vector<engine::Move>& moves,
                    double final_score) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write replay log: " + path);
  out << "seed=" << config.seed << " players=" << config.players;
  if (config.colors != 5) out << " colors=" << config.colors;
  if (config.ranks != 5) out << " ranks=" << config.ranks;
  out << "\n";
  for (const auto& move : moves) {
    out << text::RenderAction(move) << "\n";
  }
  out << "score=" << final_score << "\n";
}

ReplayLog ReadReplayLog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open replay log: " + path);
  std::string header;
  if (!std::getline(in, header)) {
    throw ProtocolError("replay log is empty: " + path);
  }

  ReplayLog log;
  std::istringstream hs(header);
  std::string token;
  bool have_seed = false, have_players = false;
  while (hs >> token) {
    size_t eq = token.find('=');
    if (eq == std::string::npos) {
      throw ProtocolError("malformed replay header token: " + token);
    }
    std::string key = token.substr(0, eq);
    std::string value = token.substr(eq + 1);
    if (key == "seed") {
      log.config.seed = std::stoull(value);
      have_seed = true;
    } else if (key == "players") {
      log.config.players = std::stoi(value);
      have_players = true;
    } else if (key == "colors") {
      log.config.colors = std::stoi(value);
    } else if (key == "ranks") {
      log.config.ranks = std::stoi(value);
    } else {
      throw ProtocolError("unknown replay header key: " + key);
    }
  }
  if (!have_seed || !have_players) {
    throw ProtocolError("replay header must carry seed= and players=");
  }

  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("score=", 0) == 0) {
      log.recorded_score = std::stod(line.substr(6));
      break;
    }
    log.moves.push_back(text::ParseAction(line, log.config));
  }
  return log;
}

ReplayExecution ExecuteReplayLog(const ReplayLog& log) {
  engine::GameState state = engine::GameState::NewGame(log.config);
  ReplayExecution exec;
  double ret = 0;
  for (const auto& move : log.moves) {
    ret += state.Apply(move).reward;
    ++exec.turns;
  }
  exec.terminal = state.terminal();
  exec.bombed = state.life_tokens() == 0;
  exec.final_score =
      exec.bombed && log.config.bomb_out_zeroes_score ? 0 : state.score();
  return exec;
}

}  // namespace eval
}  // namespace r3d2
