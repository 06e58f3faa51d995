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

#include "r3d2/eval/evaluator.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "r3d2/engine/game_state.h"
#include "r3d2/eval/replay_log.h"
#include "r3d2/nn/qnet.h"
#include "r3d2/rng.h"
#include "r3d2/text/render.h"
#include "r3d2/util.h"

namespace r3d2 {
namespace eval {

namespace {

using nlohmann::json;

constexpr uint64_t kGameStream = 0xe7a1;
constexpr uint64_t kRandomSeatStream = 0x5eed;

struct GameOutcome {
  double score = 0;
  bool bombed = false;
  std::vector<engine::Move> moves;
};

// One evaluation game. Every seat runs its own frozen policy with its own
// recurrent state and the text options it was trained with.
GameOutcome PlayOneGame(const engine::GameConfig& base,
                        const std::vector<const LoadedPolicy*>& team,
                        const text::Vocab& vocab, uint64_t game_seed,
                        bool keep_moves) {
  engine::GameConfig config = base;
  config.seed = game_seed;
  engine::GameState state = engine::GameState::NewGame(config);

  const int players = config.players;
  struct Seat {
    std::unique_ptr<nn::QNet<float>> net;
    nn::QNet<float>::Recurrent recurrent;
    nn::ActionEmbedCache<float> embeds;
    text::RenderOptions render;
    bool strip_discards = false;
    bool random = false;
    SplitMix64 rng{0};
  };
  std::vector<Seat> seats(players);
  for (int s = 0; s < players; ++s) {
    const LoadedPolicy* policy = team[s];
    if (policy->spec.checkpoint_path == "random") {
      seats[s].random = true;
      seats[s].rng =
          SplitMix64(SplitMix64::Derive(game_seed, kRandomSeatStream + s));
      continue;
    }
    const auto& meta = policy->checkpoint.text_options;
    seats[s].net =
        std::make_unique<nn::QNet<float>>(policy->checkpoint.params);
    seats[s].recurrent = seats[s].net->InitialRecurrent();
    seats[s].render.include_player_knowledge = meta.include_player_knowledge;
    seats[s].render.include_last_action = meta.include_last_action;
    seats[s].strip_discards = !meta.include_discards;
  }

  GameOutcome outcome;
  while (!state.terminal()) {
    const int idx = state.current_player();
    Seat& seat = seats[idx];
    engine::Observation obs = state.Observe(idx);
    const std::vector<engine::Move> moves = obs.legal_moves;

    int chosen;
    if (seat.random) {
      chosen = static_cast<int>(seat.rng.NextBelow(moves.size()));
    } else {
      if (seat.strip_discards) obs.discards.reset();
      std::vector<int> obs_ids =
          text::Tokenize(text::RenderObservation(obs, seat.render), vocab).ids;
      std::vector<std::vector<int>> cand_ids;
      cand_ids.reserve(moves.size());
      for (const auto& move : moves) {
        cand_ids.push_back(
            text::Tokenize(text::RenderAction(move), vocab).ids);
      }
      auto q = seat.net->Act(obs_ids, cand_ids, seat.recurrent, &seat.embeds);
      chosen = static_cast<int>(
          std::max_element(q.q.begin(), q.q.end()) - q.q.begin());
      seat.recurrent = nn::QNet<float>::Advanced(seat.recurrent, q, chosen);
    }
    if (keep_moves) outcome.moves.push_back(moves[chosen]);
    state.Apply(moves[chosen]);
  }

  outcome.bombed = state.life_tokens() == 0;
  outcome.score = outcome.bombed && config.bomb_out_zeroes_score
                      ? 0
                      : state.score();
  return outcome;
}

double Mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0;
  double total = 0;
  for (double x : xs) total += x;
  return total / static_cast<double>(xs.size());
}

}  // namespace

json EvalReport::ToJson(bool include_per_game) const {
  json j{{"team", team},
         {"games", games},
         {"seed", seed},
         {"mean_score", mean_score},
         {"std_error", std_error},
         {"bomb_rate", bomb_rate}};
  if (include_per_game) j["per_game_scores"] = per_game_scores;
  return j;
}

Evaluator::Evaluator(const engine::GameConfig& game)
    : game_(game), vocab_(text::Vocab::Default()) {
  // The engine always exposes discards; seats trained without them strip
  // the section at render time.
  game_.include_discards_in_obs = true;
  game_.Validate();
}

std::shared_ptr<const LoadedPolicy> Evaluator::Load(const PolicySpec& spec) {
  auto policy = std::make_shared<LoadedPolicy>();
  policy->spec = spec;
  if (spec.checkpoint_path == "random") {
    return policy;
  }
  policy->checkpoint = nn::LoadCheckpoint(spec.checkpoint_path);
  if (policy->checkpoint.vocab_hash != vocab_.Hash()) {
    throw LoadError("checkpoint " + spec.checkpoint_path +
                    " was built against a different vocabulary; it is not "
                    "compatible with this evaluator");
  }
  return policy;
}

EvalReport Evaluator::PlayTeam(
    const std::vector<std::shared_ptr<const LoadedPolicy>>& team, int games,
    uint64_t seed, const std::string& record_path) {
  if (static_cast<int>(team.size()) != game_.players) {
    throw ProtocolError("team of " + std::to_string(team.size()) +
                        " does not fit a " + std::to_string(game_.players) +
                        "-player game");
  }
  std::vector<const LoadedPolicy*> raw;
  raw.reserve(team.size());
  for (const auto& p : team) raw.push_back(p.get());

  std::vector<GameOutcome> outcomes(games);
  const int workers = std::max(1, std::min(WorkerThreads(), games));
  auto work = [&](int w) {
    for (int g = w; g < games; g += workers) {
      outcomes[g] =
          PlayOneGame(game_, raw, vocab_, SplitMix64::Derive(seed, kGameStream + g),
                      /*keep_moves=*/g == 0 && !record_path.empty());
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  EvalReport report;
  for (const auto& p : team) report.team.push_back(p->spec.label);
  report.games = games;
  report.seed = seed;
  for (const auto& o : outcomes) {
    report.per_game_scores.push_back(o.score);
    report.bomb_rate += o.bombed ? 1 : 0;
  }
  report.bomb_rate = games > 0 ? report.bomb_rate / games : 0;
  report.mean_score = Mean(report.per_game_scores);
  if (games > 1) {
    double sq = 0;
    for (double s : report.per_game_scores) {
      sq += (s - report.mean_score) * (s - report.mean_score);
    }
    report.std_error = std::sqrt(sq / (games - 1)) / std::sqrt(games);
  }

  if (!record_path.empty() && games > 0) {
    engine::GameConfig recorded = game_;
    recorded.seed = SplitMix64::Derive(seed, kGameStream + 0);
    WriteReplayLog(record_path, recorded, outcomes[0].moves,
                   outcomes[0].score);
  }
  return report;
}

CrossplayResult Evaluator::CrossplayMatrix(
    const std::vector<std::shared_ptr<const LoadedPolicy>>& policies,
    int games, uint64_t seed) {
  if (game_.players != 2) {
    throw ProtocolError("cross-play matrices are defined for 2-player games");
  }
  const int n = static_cast<int>(policies.size());
  if (n < 1) throw ProtocolError("cross-play needs at least one policy");

  CrossplayResult result;
  for (const auto& p : policies) {
    result.labels.push_back(p->spec.label);
    result.families.push_back(p->spec.family);
  }
  result.cells.resize(n);

  std::vector<double> sp, intra, inter;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      EvalReport cell =
          PlayTeam({policies[i], policies[j]}, games,
                   SplitMix64::Derive(seed, static_cast<uint64_t>(i) * n + j));
      if (i == j) {
        sp.push_back(cell.mean_score);
      } else if (policies[i]->spec.family == policies[j]->spec.family) {
        intra.push_back(cell.mean_score);
      } else {
        inter.push_back(cell.mean_score);
      }
      result.cells[i].push_back(std::move(cell));
    }
  }
  result.sp_mean = Mean(sp);
  result.intra_xp_mean = Mean(intra);
  result.inter_xp_mean = Mean(inter);
  return result;
}

std::string CrossplayResult::ToCsv() const {
  std::ostringstream out;
  out << "seat0\\seat1";
  for (const auto& l : labels) out << "," << l;
  out << "\n";
  for (size_t i = 0; i < labels.size(); ++i) {
    out << labels[i];
    for (size_t j = 0; j < labels.size(); ++j) {
      out << "," << cells[i][j].mean_score;
    }
    out << "\n";
  }
  return out.str();
}

json CrossplayResult::ToJson() const {
  json matrix = json::array();
  for (const auto& row : cells) {
    json r = json::array();
    for (const auto& cell : row) r.push_back(cell.ToJson(false));
    matrix.push_back(r);
  }
  return json{{"labels", labels},
              {"families", families},
              {"matrix", matrix},
              {"sp_mean", sp_mean},
              {"intra_xp_mean", intra_xp_mean},
              {"inter_xp_mean", inter_xp_mean}};
}

json CrossplayResult::PlotData() const {
  // One bar triple per family, mirroring the SP / intra-XP / inter-XP
  // grouping of the 2-player comparison figures.
  std::vector<std::string> unique_families;
  for (const auto& fam : families) {
    if (std::find(unique_families.begin(), unique_families.end(), fam) ==
        unique_families.end()) {
      unique_families.push_back(fam);
    }
  }
  json bars = json::array();
  for (const auto& fam : unique_families) {
    std::vector<double> sp, intra, inter;
    for (size_t i = 0; i < labels.size(); ++i) {
      for (size_t j = 0; j < labels.size(); ++j) {
        bool fi = families[i] == fam, fj = families[j] == fam;
        if (!fi && !fj) continue;
        double v = cells[i][j].mean_score;
        if (i == j && fi) {
          sp.push_back(v);
        } else if (fi && fj) {
          intra.push_back(v);
        } else {
          inter.push_back(v);
        }
      }
    }
    bars.push_back(json{{"family", fam},
                        {"self_play", Mean(sp)},
                        {"intra_xp", Mean(intra)},
                        {"inter_xp", Mean(inter)}});
  }
  return bars;
}

TransferReport Evaluator::TransferEval(
    const std::vector<std::shared_ptr<const LoadedPolicy>>& n_pool,
    const std::vector<std::shared_ptr<const LoadedPolicy>>& m_pool,
    int games_per_team, uint64_t seed) {
  if (n_pool.empty() || m_pool.empty()) {
    throw ProtocolError("transfer evaluation needs both checkpoint pools");
  }
  const int players = game_.players;
  TransferReport report;
  report.eval_players = players;

  std::vector<double> all_means;
  for (int i = 1; i < players; ++i) {
    TransferReport::PerSubset subset;
    subset.seats_from_n_pool = i;
    if (static_cast<int>(n_pool.size()) < i) {
      report.warnings.push_back(
          "n-pool of " + std::to_string(n_pool.size()) +
          " cannot fill " + std::to_string(i) +
          " seats with distinct seeds; sampling with replacement");
    }
    if (static_cast<int>(m_pool.size()) < players - i) {
      report.warnings.push_back(
          "m-pool of " + std::to_string(m_pool.size()) +
          " cannot fill " + std::to_string(players - i) +
          " seats with distinct seeds; sampling with replacement");
    }
    const int reps = static_cast<int>(std::max(n_pool.size(), m_pool.size()));
    std::vector<double> means;
    for (int r = 0; r < reps; ++r) {
      std::vector<std::shared_ptr<const LoadedPolicy>> team;
      for (int s = 0; s < players; ++s) {
        if (s < i) {
          team.push_back(n_pool[(r + s) % n_pool.size()]);
        } else {
          team.push_back(m_pool[(r + s - i) % m_pool.size()]);
        }
      }
      EvalReport cell = PlayTeam(
          team, games_per_team,
          SplitMix64::Derive(seed, static_cast<uint64_t>(i) * 1000 + r));
      means.push_back(cell.mean_score);
      all_means.push_back(cell.mean_score);
      subset.teams.push_back(std::move(cell));
    }
    subset.mean = Mean(means);
    report.by_subset.push_back(std::move(subset));
  }
  report.mean = Mean(all_means);
  return report;
}

json TransferReport::ToJson() const {
  json subsets = json::array();
  for (const auto& s : by_subset) {
    json teams = json::array();
    for (const auto& t : s.teams) teams.push_back(t.ToJson(false));
    subsets.push_back(json{{"seats_from_n_pool", s.seats_from_n_pool},
                           {"teams", teams},
                           {"mean", s.mean}});
  }
  return json{{"eval_players", eval_players},
              {"pairing", "round_robin"},
              {"by_subset", subsets},
              {"mean", mean},
              {"warnings", warnings}};
}

json TransferReport::PlotData() const {
  json bars = json::array();
  for (const auto& s : by_subset) {
    bars.push_back(json{{"seats_from_n_pool", s.seats_from_n_pool},
                        {"mean", s.mean}});
  }
  return json{{"eval_players", eval_players}, {"bars", bars}, {"mean", mean}};
}

}  // namespace eval
}  // namespace r3d2
