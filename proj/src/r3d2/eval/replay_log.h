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

#ifndef R3D2_EVAL_REPLAY_LOG_H_
#define R3D2_EVAL_REPLAY_LOG_H_

#include <optional>
#include <string>
#include <vector>

#include "r3d2/engine/game_config.h"
#include "r3d2/engine/move.h"

namespace r3d2 {
namespace eval {

// Line-oriented conformance log: a `seed=<u64> players=<n>` header (with
// optional colors=/ranks= for scaled variants), one canonical action string
// per line, and an optional trailing `score=<v>` produced by the recorder.
struct ReplayLog {
  engine::GameConfig config;
  std::vector<engine::Move> moves;
  std::optional<double> recorded_score;
};

void WriteReplayLog(const std::string& path, const engine::GameConfig& config,
                    const std::vector<engine::Move>& moves,
                    double final_score);

ReplayLog ReadReplayLog(const std::string& path);

struct ReplayExecution {
  double final_score = 0;  // bomb-out convention applied
  bool bombed = false;
  bool terminal = false;
  int turns = 0;
};

// Re-executes the log through the engine; throws IllegalMoveError if any
// recorded action is illegal in the reconstructed state.
ReplayExecution ExecuteReplayLog(const ReplayLog& log);

}  // namespace eval
}  // namespace r3d2

#endif  // R3D2_EVAL_REPLAY_LOG_H_
