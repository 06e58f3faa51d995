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

#ifndef R3D2_EVAL_EVALUATOR_H_
#define R3D2_EVAL_EVALUATOR_H_

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "r3d2/engine/game_config.h"
#include "r3d2/nn/checkpoint.h"
#include "r3d2/text/vocab.h"

namespace r3d2 {
namespace eval {

struct PolicySpec {
  std::string checkpoint_path;
  std::string label;   // algorithm + seed + training setting
  std::string family;  // label group; intra-XP = same family, off-diagonal
  bool greedy = true;
};

struct LoadedPolicy {
  PolicySpec spec;
  nn::Checkpoint checkpoint;
};

struct EvalReport {
  std::vector<std::string> team;
  int games = 0;
  uint64_t seed = 0;
  double mean_score = 0;
  double std_error = 0;
  double bomb_rate = 0;
  std::vector<double> per_game_scores;

  nlohmann::json ToJson(bool include_per_game = true) const;
};

struct CrossplayResult {
  std::vector<std::string> labels;
  std::vector<std::string> families;
  std::vector<std::vector<EvalReport>> cells;  // [i][j], seat order (i, j)
  double sp_mean = 0;        // diagonal
  double intra_xp_mean = 0;  // same family, off-diagonal
  double inter_xp_mean = 0;  // cross family

  std::string ToCsv() const;
  nlohmann::json ToJson() const;
  // Per-family self-play / intra-XP / inter-XP bars for external plotting.
  nlohmann::json PlotData() const;
};

struct TransferReport {
  struct PerSubset {
    int seats_from_n_pool = 0;
    std::vector<EvalReport> teams;
    double mean = 0;
  };
  int eval_players = 0;
  std::vector<PerSubset> by_subset;
  double mean = 0;
  std::vector<std::string> warnings;

  nlohmann::json ToJson() const;
  nlohmann::json PlotData() const;
};

// Evaluation harness over frozen checkpoints. Policies are loaded once and
// never mutated; games within a report run on worker threads over read-only
// snapshots, and reports are reproducible bit-for-bit for a fixed seed.
class Evaluator {
 public:
  explicit Evaluator(const engine::GameConfig& game);

  // Verifies the checkpoint's vocab hash against this build's vocabulary.
  std::shared_ptr<const LoadedPolicy> Load(const PolicySpec& spec);

  // Seat order fixed as given; team size must equal the configured player
  // count. record_path, when set, captures game 0 as a seeded action log.
  EvalReport PlayTeam(
      const std::vector<std::shared_ptr<const LoadedPolicy>>& team, int games,
      uint64_t seed, const std::string& record_path = "");

  // All ordered pairs for the 2-player config; diagonal = self-play.
  CrossplayResult CrossplayMatrix(
      const std::vector<std::shared_ptr<const LoadedPolicy>>& policies,
      int games, uint64_t seed);

  // Teams with i seats from the n-trained pool and players-i seats from the
  // m-trained pool, for every 0 < i < players, paired round-robin.
  TransferReport TransferEval(
      const std::vector<std::shared_ptr<const LoadedPolicy>>& n_pool,
      const std::vector<std::shared_ptr<const LoadedPolicy>>& m_pool,
      int games_per_team, uint64_t seed);

  const engine::GameConfig& game() const { return game_; }

 private:
  engine::GameConfig game_;
  text::Vocab vocab_;
};

}  // namespace eval
}  // namespace r3d2

#endif  // R3D2_EVAL_EVALUATOR_H_
