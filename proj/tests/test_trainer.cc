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
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "r3d2/nn/checkpoint.h"
#include "r3d2/nn/qnet.h"
#include "r3d2/train/actor.h"
#include "r3d2/train/epsilon.h"
#include "r3d2/train/td.h"
#include "r3d2/train/trainer.h"
#include "r3d2/util.h"

using r3d2::SplitMix64;
using r3d2::nn::NetConfig;
using r3d2::nn::QNetParams;
using r3d2::train::Adam;
using r3d2::train::AdamConfig;
using r3d2::train::ComputeTargets;
using r3d2::train::DoubleDqnTarget;
using r3d2::train::EpsilonForActor;
using r3d2::train::GlobalNormClip;
using r3d2::train::SelfPlayActor;
using r3d2::train::TrainConfig;
using r3d2::train::Trainer;

namespace {

TrainConfig MiniConfig() {
  TrainConfig cfg;
  cfg.settings = {2};
  cfg.colors = 2;
  cfg.ranks = 5;
  cfg.layers = 1;
  cfg.model_dim = 16;
  cfg.attention_heads = 2;
  cfg.ffn_dim = 32;
  cfg.max_seq_len = 192;
  cfg.include_player_knowledge = false;
  cfg.include_discards = false;
  cfg.batchsize = 4;
  cfg.burn_in_frames = 40;
  cfg.replay_buffer_size = 512;
  cfg.env_steps_per_update = 4;
  cfg.num_actors = 1;
  cfg.deterministic = true;
  cfg.seed = 11;
  cfg.eval_probe_period_epochs = 1000;  // no probes in unit tests
  return cfg;
}

SelfPlayActor::Options ActorOptions(const TrainConfig& cfg, int players,
                                    double epsilon) {
  SelfPlayActor::Options opts;
  opts.game = cfg.Game(players, 0);
  opts.render = cfg.Render();
  opts.epsilon = epsilon;
  return opts;
}

}  // namespace

TEST_CASE("epsilon ladder endpoints and monotonicity") {
  CHECK(EpsilonForActor(0, 80) == 0.1);
  CHECK(std::abs(EpsilonForActor(79, 80) - 1e-8) / 1e-8 < 1e-10);
  for (int i = 1; i < 80; ++i) {
    CHECK(EpsilonForActor(i, 80) < EpsilonForActor(i - 1, 80));
  }
  CHECK_THROWS_AS(EpsilonForActor(80, 80), r3d2::ProtocolError);
}

TEST_CASE("double-DQN targets select online, evaluate target") {
  // Hand-built case: online argmax is index 1, target evaluates it.
  CHECK(DoubleDqnTarget(0.5, 0.999, {1.0f, 2.0f}, {5.0f, 3.0f}) ==
        doctest::Approx(0.5 + 0.999 * 3.0));

  // Online == target reduces to the vanilla max target.
  CHECK(DoubleDqnTarget(1.0, 0.9, {0.5f, 2.0f, 1.0f}, {0.5f, 2.0f, 1.0f}) ==
        doctest::Approx(1.0 + 0.9 * 2.0));

  // Ties resolve to the lowest index.
  CHECK(DoubleDqnTarget(0.0, 1.0, {2.0f, 2.0f}, {7.0f, 9.0f}) ==
        doctest::Approx(7.0));
}

TEST_CASE("per-episode targets bootstrap except at the terminal step") {
  std::vector<std::vector<float>> q_online = {{0.f, 1.f}, {2.f, 1.f}, {3.f}};
  std::vector<std::vector<float>> q_target = {{9.f, 9.f}, {4.f, 8.f}, {-7.f}};
  std::vector<float> rewards = {1.0f, 0.0f, -7.0f};

  auto targets = ComputeTargets(q_online, q_target, rewards, 0.999, 1);
  REQUIRE(targets.size() == 3);
  CHECK(targets[0] == doctest::Approx(1.0 + 0.999 * 4.0));   // argmax online=0
  CHECK(targets[1] == doctest::Approx(0.0 + 0.999 * -7.0));  // single cand
  CHECK(targets[2] == doctest::Approx(-7.0));                // terminal

  // n_step=2 folds one extra reward before bootstrapping.
  auto two = ComputeTargets(q_online, q_target, rewards, 0.5, 2);
  CHECK(two[0] == doctest::Approx(1.0 + 0.5 * 0.0 + 0.25 * -7.0));
  CHECK(two[1] == doctest::Approx(0.0 + 0.5 * -7.0));
  CHECK(two[2] == doctest::Approx(-7.0));
}

TEST_CASE("gradient clip hits the bound exactly") {
  NetConfig net;
  net.layers = 1;
  net.model_dim = 8;
  net.attention_heads = 2;
  net.ffn_dim = 8;
  net.max_seq_len = 8;
  net.vocab_size = 8;
  auto grads = QNetParams<float>::Init(net, 1).ZerosLike();
  grads.value_head.w1.setConstant(1.0f);
  float raw = std::sqrt(static_cast<float>(grads.value_head.w1.size()));
  grads.value_head.w1 *= 50.0f / raw;  // global norm exactly 50

  double pre = GlobalNormClip(&grads, 5.0);
  CHECK(pre == doctest::Approx(50.0).epsilon(1e-5));
  double post = GlobalNormClip(&grads, 1e9);
  CHECK(post == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("adam leaves parameters alone on zero gradients") {
  NetConfig net;
  net.layers = 1;
  net.model_dim = 8;
  net.attention_heads = 2;
  net.ffn_dim = 8;
  net.max_seq_len = 8;
  net.vocab_size = 8;
  auto params = QNetParams<float>::Init(net, 2);
  auto before = params;
  Adam adam(params, AdamConfig{});
  adam.Step(&params, params.ZerosLike());
  auto a = NamedArrays(before);
  auto b = NamedArrays(params);
  for (size_t i = 0; i < a.size(); ++i) CHECK(*a[i].second == *b[i].second);
}

TEST_CASE("actor emits one trajectory per seat with shared rewards") {
  TrainConfig cfg = MiniConfig();
  cfg.settings = {3};
  auto net = cfg.Net(r3d2::text::Vocab::Default().size());
  auto params = QNetParams<float>::Init(net, 5);
  r3d2::text::Vocab vocab = r3d2::text::Vocab::Default();

  SelfPlayActor actor(ActorOptions(cfg, 3, 0.5), vocab, 77);
  auto result = actor.PlayGame(params, 1234);

  REQUIRE(result.trajectories.size() == 3);
  for (const auto& traj : result.trajectories) {
    CHECK(traj.player_count == 3);
    double sum = 0;
    for (float r : traj.tokens.rewards) sum += r;
    CHECK(sum == doctest::Approx(result.episode_return).epsilon(1e-6));
    traj.tokens.Validate();
  }
  if (result.bombed) {
    CHECK(result.episode_return == doctest::Approx(0.0));
    CHECK(result.score == 0);
  } else {
    CHECK(result.episode_return == doctest::Approx(result.score));
  }
}

TEST_CASE("greedy actor choices equal the episode-forward argmax") {
  TrainConfig cfg = MiniConfig();
  auto net = cfg.Net(r3d2::text::Vocab::Default().size());
  auto params = QNetParams<float>::Init(net, 9);
  r3d2::text::Vocab vocab = r3d2::text::Vocab::Default();

  SelfPlayActor actor(ActorOptions(cfg, 2, 0.0), vocab, 3);
  auto result = actor.PlayGame(params, 999);

  r3d2::nn::QNet<float> qnet(params);
  for (const auto& traj : result.trajectories) {
    auto fwd = qnet.ForwardEpisode(traj.tokens, false);
    for (size_t t = 0; t < fwd.steps.size(); ++t) {
      const auto& q = fwd.steps[t].q;
      int argmax = static_cast<int>(
          std::max_element(q.begin(), q.end()) - q.begin());
      CHECK(traj.tokens.chosen[t] == argmax);
    }
  }
}

TEST_CASE("fully random actor covers the action space") {
  TrainConfig cfg = MiniConfig();
  auto net = cfg.Net(r3d2::text::Vocab::Default().size());
  auto params = QNetParams<float>::Init(net, 13);
  r3d2::text::Vocab vocab = r3d2::text::Vocab::Default();

  SelfPlayActor actor(ActorOptions(cfg, 2, 1.0), vocab, 21);
  SplitMix64 seeds(5);
  int plays = 0, discards = 0, reveals = 0;
  for (int g = 0; g < 30; ++g) {
    auto result = actor.PlayGame(params, seeds.Next());
    for (const auto& traj : result.trajectories) {
      for (size_t t = 0; t < traj.tokens.chosen.size(); ++t) {
        const auto& ids = traj.tokens.cands[t][traj.tokens.chosen[t]];
        const std::string& word = vocab.token(ids[0]);
        if (word == "play") ++plays;
        if (word == "discard") ++discards;
        if (word == "reveal") ++reveals;
      }
    }
  }
  CHECK(plays > 0);
  CHECK(discards > 0);
  CHECK(reveals > 0);
}

TEST_CASE("learner syncs the target on the configured interval") {
  TrainConfig cfg = MiniConfig();
  cfg.target_network_sync_interval = 3;
  cfg.epochs = 1;
  cfg.updates_per_epoch = 3;
  cfg.out_dir = "trainer_test_sync";
  Trainer trainer(cfg);

  // Fill the buffer.
  r3d2::text::Vocab vocab = r3d2::text::Vocab::Default();
  SelfPlayActor actor(ActorOptions(cfg, 2, 1.0), vocab, 4);
  while (!trainer.buffer().Ready()) {
    auto result = actor.PlayGame(trainer.learner().online(), 101);
    for (auto& traj : result.trajectories) {
      trainer.buffer().Append(std::move(traj));
    }
  }

  auto equal_params = [](const QNetParams<float>& a,
                         const QNetParams<float>& b) {
    auto na = NamedArrays(a);
    auto nb = NamedArrays(b);
    for (size_t i = 0; i < na.size(); ++i) {
      if (*na[i].second != *nb[i].second) return false;
    }
    return true;
  };

  trainer.learner().Step(trainer.buffer(), 1);
  CHECK(!equal_params(trainer.learner().online(), trainer.learner().target()));
  trainer.learner().Step(trainer.buffer(), 2);
  trainer.learner().Step(trainer.buffer(), 3);  // step 3: sync
  CHECK(equal_params(trainer.learner().online(), trainer.learner().target()));
  std::filesystem::remove_all("trainer_test_sync");
}

TEST_CASE("deterministic training runs reproduce checkpoints bitwise") {
  auto run = [](const std::string& dir) {
    TrainConfig cfg = MiniConfig();
    cfg.epochs = 1;
    cfg.updates_per_epoch = 4;
    cfg.out_dir = dir;
    Trainer trainer(cfg);
    trainer.Run();
  };
  run("trainer_test_a");
  run("trainer_test_b");

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
  };
  CHECK(slurp("trainer_test_a/epoch_1.ckpt") ==
        slurp("trainer_test_b/epoch_1.ckpt"));
  CHECK(slurp("trainer_test_a/metrics.jsonl") ==
        slurp("trainer_test_b/metrics.jsonl"));
  std::filesystem::remove_all("trainer_test_a");
  std::filesystem::remove_all("trainer_test_b");
}

TEST_CASE("multi-setting runs mix player counts in one buffer") {
  TrainConfig cfg = MiniConfig();
  cfg.settings = {2, 3};
  cfg.epochs = 1;
  cfg.updates_per_epoch = 2;
  cfg.burn_in_frames = 60;
  cfg.out_dir = "trainer_test_m";
  Trainer trainer(cfg);
  trainer.Run();

  std::string dump = trainer.buffer().DebugDump();
  CHECK(dump.find("\"player_count\":2") != std::string::npos);
  CHECK(dump.find("\"player_count\":3") != std::string::npos);
  std::filesystem::remove_all("trainer_test_m");
}

TEST_CASE("train config round-trips and rejects unknown keys") {
  TrainConfig cfg = MiniConfig();
  cfg.settings = {2, 4};
  TrainConfig reparsed = TrainConfig::FromString(cfg.ToString());
  CHECK(reparsed.ToString() == cfg.ToString());
  CHECK(reparsed.settings == std::set<int>{2, 4});
  CHECK(reparsed.model_dim == 16);

  CHECK_THROWS_AS(TrainConfig::FromString("nonsense_key=1\n"),
                  r3d2::ConfigError);
  CHECK_THROWS_AS(TrainConfig::FromString("lr\n"), r3d2::ConfigError);

  TrainConfig overridden = cfg;
  overridden.Set("lr", "0.001");
  CHECK(overridden.lr == doctest::Approx(0.001));
}
