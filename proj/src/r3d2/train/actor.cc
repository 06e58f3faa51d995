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

#include "r3d2/train/actor.h"

#include <algorithm>

#include "r3d2/engine/game_state.h"

namespace r3d2 {
namespace train {

SelfPlayActor::SelfPlayActor(const Options& options, const text::Vocab& vocab,
                             uint64_t exploration_seed)
    : options_(options), vocab_(vocab), rng_(exploration_seed) {}

SelfPlayActor::GameResult SelfPlayActor::PlayGame(
    const nn::QNetParams<float>& params, uint64_t game_seed) {
  engine::GameConfig game_config = options_.game;
  game_config.seed = game_seed;
  engine::GameState state = engine::GameState::NewGame(game_config);
  const int players = game_config.players;

  nn::QNet<float> net(params);
  nn::ActionEmbedCache<float> embed_cache;  // valid for this snapshot

  struct SeatTrace {
    nn::EpisodeTokens tokens;
    nn::QNet<float>::Recurrent state;
    double pending_reward = 0;  // team rewards before this seat's first turn
  };
  std::vector<SeatTrace> seats(players);
  for (auto& seat : seats) seat.state = net.InitialRecurrent();

  GameResult result;
  while (!state.terminal()) {
    const int seat_idx = state.current_player();
    SeatTrace& seat = seats[seat_idx];

    engine::Observation obs = state.Observe(seat_idx);
    std::string obs_text = text::RenderObservation(obs, options_.render);
    std::vector<int> obs_ids = text::Tokenize(obs_text, vocab_).ids;

    const std::vector<engine::Move>& moves = obs.legal_moves;
    std::vector<std::vector<int>> cand_ids;
    cand_ids.reserve(moves.size());
    for (const auto& move : moves) {
      cand_ids.push_back(
          text::Tokenize(text::RenderAction(move), vocab_).ids);
    }

    auto q = net.Act(obs_ids, cand_ids, seat.state, &embed_cache);
    int chosen;
    if (rng_.NextDouble() < options_.epsilon) {
      chosen = static_cast<int>(rng_.NextBelow(moves.size()));
    } else {
      chosen = static_cast<int>(
          std::max_element(q.q.begin(), q.q.end()) - q.q.begin());
    }
    seat.state = nn::QNet<float>::Advanced(seat.state, q, chosen);

    auto step = state.Apply(moves[chosen]);
    result.episode_return += step.reward;

    seat.tokens.obs.push_back(std::move(obs_ids));
    seat.tokens.cands.push_back(std::move(cand_ids));
    seat.tokens.chosen.push_back(chosen);
    seat.tokens.rewards.push_back(
        static_cast<float>(step.reward + seat.pending_reward));
    seat.pending_reward = 0;

    // Shared team reward accrues to every other seat's open step.
    for (int p = 0; p < players; ++p) {
      if (p == seat_idx) continue;
      if (seats[p].tokens.rewards.empty()) {
        seats[p].pending_reward += step.reward;
      } else {
        seats[p].tokens.rewards.back() += static_cast<float>(step.reward);
      }
    }
    ++result.turns;
  }

  result.score = state.life_tokens() == 0 && game_config.bomb_out_zeroes_score
                     ? 0
                     : state.score();
  result.bombed = state.life_tokens() == 0;
  for (int p = 0; p < players; ++p) {
    if (seats[p].tokens.obs.empty()) continue;  // seat never got a turn
    replay::Trajectory traj;
    traj.tokens = std::move(seats[p].tokens);
    traj.player_count = players;
    result.trajectories.push_back(std::move(traj));
  }
  return result;
}

}  // namespace train
}  // namespace r3d2
