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

#include "r3d2/train/trainer.h"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>
#include <vector>

#include "json.hpp"
#include "r3d2/nn/checkpoint.h"
#include "r3d2/rng.h"
#include "r3d2/train/actor.h"
#include "r3d2/train/epsilon.h"
#include "r3d2/util.h"

namespace r3d2 {
namespace train {

namespace {

using nlohmann::json;

constexpr uint64_t kSampleStream = 0x5a3175;
constexpr uint64_t kActorStream = 0xac7085;
constexpr uint64_t kProbeStream = 0x9e0b35;

nn::TextOptionsMeta MetaFrom(const TrainConfig& cfg) {
  nn::TextOptionsMeta meta;
  meta.include_player_knowledge = cfg.include_player_knowledge;
  meta.include_last_action = cfg.include_last_action;
  meta.include_discards = cfg.include_discards;
  return meta;
}

}  // namespace

Trainer::Trainer(TrainConfig config)
    : config_(std::move(config)), vocab_(text::Vocab::Default()) {
  config_.Validate();
  nn::NetConfig net = config_.Net(vocab_.size());
  nn::QNetParams<float> params =
      config_.init_mode == "import"
          ? nn::ImportParams(net, config_.import_path)
          : nn::QNetParams<float>::Init(net, config_.seed);

  LearnerOptions opts;
  opts.batchsize = config_.batchsize;
  opts.discount_factor = config_.discount_factor;
  opts.n_step = config_.n_step;
  opts.grad_clip = config_.grad_clip;
  opts.target_network_sync_interval = config_.target_network_sync_interval;
  opts.adam = config_.Adam();
  opts.workers = config_.deterministic ? 1 : WorkerThreads();

  buffer_ = std::make_unique<replay::ReplayBuffer>(config_.Buffer());
  learner_ = std::make_unique<Learner>(std::move(params), opts);
  PublishSnapshot();
}

void Trainer::PublishSnapshot() {
  auto copy = std::make_shared<nn::QNetParams<float>>(learner_->online());
  std::lock_guard<std::mutex> lock(snapshot_mu_);
  snapshot_ = std::move(copy);
}

std::shared_ptr<const nn::QNetParams<float>> Trainer::Snapshot() const {
  std::lock_guard<std::mutex> lock(snapshot_mu_);
  return snapshot_;
}

void Trainer::Run() {
  std::filesystem::create_directories(config_.out_dir);
  {
    std::ofstream cfg_out(config_.out_dir + "/config.txt");
    cfg_out << config_.ToString();
  }
  metrics_path_ = config_.out_dir + "/metrics.jsonl";
  {
    std::ofstream truncate(metrics_path_, std::ios::trunc);
  }
  const int64_t total =
      static_cast<int64_t>(config_.epochs) * config_.updates_per_epoch;
  if (config_.deterministic) {
    RunDeterministic(total);
  } else {
    RunThreaded(total);
  }
}

namespace {

void AppendLine(std::mutex& mu, const std::string& path,
                const json& object) {
  std::lock_guard<std::mutex> lock(mu);
  std::ofstream out(path, std::ios::app);
  out << object.dump() << "\n";
}

}  // namespace

void Trainer::SaveEpoch(int epoch) {
  std::string path =
      config_.out_dir + "/epoch_" + std::to_string(epoch) + ".ckpt";
  nn::SaveCheckpoint(path, learner_->online(), MetaFrom(config_),
                     vocab_.ToText(), learner_->steps());
}

double Trainer::ProbeSelfPlay(const nn::QNetParams<float>& params,
                              int players, int games, uint64_t seed) const {
  SelfPlayActor::Options opts;
  opts.game = config_.Game(players, 0);
  opts.render = config_.Render();
  opts.epsilon = 0.0;
  SelfPlayActor actor(opts, vocab_, seed);
  double total = 0;
  for (int g = 0; g < games; ++g) {
    total += actor.PlayGame(params, SplitMix64::Derive(seed, g)).score;
  }
  return games > 0 ? total / games : 0.0;
}

double Trainer::RandomBaseline(int players, int games, uint64_t seed) const {
  SelfPlayActor::Options opts;
  opts.game = config_.Game(players, 0);
  opts.render = config_.Render();
  opts.epsilon = 1.0;
  SelfPlayActor actor(opts, vocab_, seed);
  // A random policy never consults the network; a fresh tiny net would do,
  // but reusing the online params keeps the call simple.
  double total = 0;
  for (int g = 0; g < games; ++g) {
    total += actor.PlayGame(learner_->online(), SplitMix64::Derive(seed, g))
                 .score;
  }
  return games > 0 ? total / games : 0.0;
}

void Trainer::RunDeterministic(int64_t total_steps) {
  std::vector<int> settings(config_.settings.begin(), config_.settings.end());
  std::vector<SelfPlayActor> actors;
  std::vector<SplitMix64> game_seeds;
  for (size_t i = 0; i < settings.size(); ++i) {
    SelfPlayActor::Options opts;
    opts.game = config_.Game(settings[i], 0);
    opts.render = config_.Render();
    opts.epsilon = EpsilonForActor(
        static_cast<int>(i) % config_.num_actors, config_.num_actors);
    actors.emplace_back(opts, vocab_,
                        SplitMix64::Derive(config_.seed, kActorStream + i));
    game_seeds.emplace_back(
        SplitMix64::Derive(config_.seed, kActorStream + 1000 + i));
  }

  const int64_t log_every = std::max<int64_t>(1, total_steps / 2000);
  size_t next_actor = 0;
  for (int64_t step = 0; step < total_steps; ++step) {
    int64_t needed = config_.burn_in_frames +
                     step * static_cast<int64_t>(config_.env_steps_per_update);
    while (buffer_->frames() < needed) {
      auto& actor = actors[next_actor];
      auto result = actor.PlayGame(learner_->online(),
                                   game_seeds[next_actor].Next());
      next_actor = (next_actor + 1) % actors.size();
      for (auto& traj : result.trajectories) {
        buffer_->Append(std::move(traj));
      }
    }

    LearnerMetrics m = learner_->Step(
        *buffer_, SplitMix64::Derive(config_.seed, kSampleStream + step));
    if (m.step % log_every == 0) {
      AppendLine(metrics_mu_, metrics_path_,
                 json{{"type", "train"},
                      {"step", m.step},
                      {"loss", m.loss},
                      {"grad_norm", m.grad_norm},
                      {"mean_abs_td", m.mean_abs_td},
                      {"buffer_size", buffer_->size()},
                      {"frames", buffer_->frames()}});
    }

    if (m.step % config_.updates_per_epoch == 0) {
      int epoch = static_cast<int>(m.step / config_.updates_per_epoch);
      SaveEpoch(epoch);
      if (epoch % config_.eval_probe_period_epochs == 0) {
        for (int players : settings) {
          double score = ProbeSelfPlay(
              learner_->online(), players, config_.eval_probe_games,
              SplitMix64::Derive(config_.seed, kProbeStream + epoch));
          AppendLine(metrics_mu_, metrics_path_,
                     json{{"type", "probe"},
                          {"epoch", epoch},
                          {"players", players},
                          {"games", config_.eval_probe_games},
                          {"mean_score", score}});
        }
      }
    }
  }
  PublishSnapshot();
}

void Trainer::RunThreaded(int64_t total_steps) {
  std::vector<int> settings(config_.settings.begin(), config_.settings.end());
  std::atomic<bool> stop{false};
  std::atomic<int> epoch_done{0};

  std::vector<std::thread> actor_threads;
  actor_threads.reserve(config_.num_actors);
  for (int i = 0; i < config_.num_actors; ++i) {
    actor_threads.emplace_back([this, i, &settings, &stop] {
      SelfPlayActor::Options opts;
      opts.game = config_.Game(settings[i % settings.size()], 0);
      opts.render = config_.Render();
      opts.epsilon = EpsilonForActor(i, config_.num_actors);
      SelfPlayActor actor(opts, vocab_,
                          SplitMix64::Derive(config_.seed, kActorStream + i));
      SplitMix64 seeds(
          SplitMix64::Derive(config_.seed, kActorStream + 1000 + i));
      while (!stop.load(std::memory_order_relaxed)) {
        auto snapshot = Snapshot();  // refreshed at game boundaries
        auto result = actor.PlayGame(*snapshot, seeds.Next());
        for (auto& traj : result.trajectories) {
          buffer_->Append(std::move(traj));
        }
      }
    });
  }

  std::thread probe_thread([this, &settings, &stop, &epoch_done] {
    int last_probed = 0;
    while (!stop.load(std::memory_order_relaxed)) {
      int epoch = epoch_done.load(std::memory_order_relaxed);
      if (epoch > last_probed && epoch % config_.eval_probe_period_epochs == 0) {
        last_probed = epoch;
        auto snapshot = Snapshot();
        for (int players : settings) {
          double score = ProbeSelfPlay(
              *snapshot, players, config_.eval_probe_games,
              SplitMix64::Derive(config_.seed, kProbeStream + epoch));
          AppendLine(metrics_mu_, metrics_path_,
                     json{{"type", "probe"},
                          {"epoch", epoch},
                          {"players", players},
                          {"games", config_.eval_probe_games},
                          {"mean_score", score}});
        }
      } else {
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
      }
    }
  });

  while (!buffer_->Ready()) {
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }

  const int64_t log_every = std::max<int64_t>(1, total_steps / 2000);
  for (int64_t step = 0; step < total_steps; ++step) {
    LearnerMetrics m = learner_->Step(
        *buffer_, SplitMix64::Derive(config_.seed, kSampleStream + step));
    PublishSnapshot();
    if (m.step % log_every == 0) {
      AppendLine(metrics_mu_, metrics_path_,
                 json{{"type", "train"},
                      {"step", m.step},
                      {"loss", m.loss},
                      {"grad_norm", m.grad_norm},
                      {"mean_abs_td", m.mean_abs_td},
                      {"buffer_size", buffer_->size()},
                      {"frames", buffer_->frames()}});
    }
    if (m.step % config_.updates_per_epoch == 0) {
      int epoch = static_cast<int>(m.step / config_.updates_per_epoch);
      SaveEpoch(epoch);
      epoch_done.store(epoch, std::memory_order_relaxed);
    }
  }

  stop.store(true, std::memory_order_relaxed);
  for (auto& t : actor_threads) t.join();
  probe_thread.join();
}

}  // namespace train
}  // namespace r3d2
