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
#include <cmath>
#include <cstdio>
#include <vector>

#include "doctest.h"
#include "r3d2/nn/checkpoint.h"
#include "r3d2/nn/qnet.h"
#include "r3d2/rng.h"
#include "r3d2/util.h"

using r3d2::SplitMix64;
using r3d2::nn::EpisodeTokens;
using r3d2::nn::Head;
using r3d2::nn::Mat;
using r3d2::nn::NamedArrays;
using r3d2::nn::NetConfig;
using r3d2::nn::QNet;
using r3d2::nn::QNetParams;
using r3d2::nn::Vec;

namespace {

NetConfig TinyConfig(bool act_lstm = false) {
  NetConfig cfg;
  cfg.layers = 1;
  cfg.model_dim = 8;
  cfg.attention_heads = 2;
  cfg.ffn_dim = 12;
  cfg.max_seq_len = 12;
  cfg.vocab_size = 12;
  cfg.action_head_lstm = act_lstm;
  return cfg;
}

std::vector<int> RandomIds(SplitMix64& rng, int len, int vocab) {
  std::vector<int> ids(len);
  for (int& id : ids) id = 2 + static_cast<int>(rng.NextBelow(vocab - 2));
  return ids;
}

EpisodeTokens TinyEpisode(SplitMix64& rng, int vocab) {
  EpisodeTokens ep;
  std::vector<int> shared = RandomIds(rng, 2, vocab);
  ep.obs = {RandomIds(rng, 5, vocab), RandomIds(rng, 4, vocab),
            RandomIds(rng, 6, vocab)};
  ep.cands = {{shared, RandomIds(rng, 3, vocab)},
              {RandomIds(rng, 2, vocab), RandomIds(rng, 3, vocab), shared},
              {shared, RandomIds(rng, 2, vocab)}};
  ep.chosen = {1, 0, 1};
  ep.rewards = {0.0f, 1.0f, -1.0f};
  return ep;
}

template <typename T>
double EpisodeLoss(const QNetParams<T>& params, const EpisodeTokens& ep,
                   const std::vector<std::vector<T>>& targets) {
  QNet<T> net(params);
  auto fwd = net.ForwardEpisode(ep, /*keep_caches=*/false);
  double loss = 0;
  for (size_t t = 0; t < fwd.steps.size(); ++t) {
    for (size_t k = 0; k < fwd.steps[t].q.size(); ++k) {
      double d = fwd.steps[t].q[k] - targets[t][k];
      loss += d * d;
    }
  }
  return loss;
}

}  // namespace

TEST_CASE("init is deterministic and shaped by the config") {
  NetConfig cfg = TinyConfig();
  auto a = QNetParams<float>::Init(cfg, 7);
  auto b = QNetParams<float>::Init(cfg, 7);
  auto named_a = NamedArrays(a);
  auto named_b = NamedArrays(b);
  REQUIRE(named_a.size() == named_b.size());
  for (size_t i = 0; i < named_a.size(); ++i) {
    CHECK(named_a[i].first == named_b[i].first);
    CHECK(*named_a[i].second == *named_b[i].second);
  }
  auto c = QNetParams<float>::Init(cfg, 8);
  CHECK(*NamedArrays(c)[0].second != *named_a[0].second);

  CHECK(a.obs_encoder.layers[0].wq.rows() == 8);
  CHECK(a.obs_encoder.layers[0].wq.cols() == 8);
  CHECK(a.obs_lstm.w_input.rows() == 32);
  CHECK(a.value_head.w2.cols() == 8);

  NetConfig bad = cfg;
  bad.attention_heads = 3;  // 8 % 3 != 0
  CHECK_THROWS_AS(QNetParams<float>::Init(bad, 1), r3d2::ConfigError);
}

TEST_CASE("encode_text ignores padding and honors the mask contract") {
  NetConfig cfg = TinyConfig();
  auto params = QNetParams<float>::Init(cfg, 3);
  QNet<float> net(params);

  std::vector<int> ids = {2, 5, 7, 4};
  Vec<float> base = net.EncodeText(Head::kObservation, ids);

  std::vector<int> padded = ids;
  std::vector<int> mask(ids.size(), 1);
  for (int i = 0; i < 6; ++i) {
    padded.push_back(0);
    mask.push_back(0);
  }
  Vec<float> with_pads = net.EncodeText(Head::kObservation, padded, mask);
  CHECK((base - with_pads).cwiseAbs().maxCoeff() <= 1e-6f);

  CHECK_THROWS_AS(
      net.EncodeText(Head::kObservation, {0, 0}, {0, 0}),
      r3d2::ProtocolError);
  CHECK_THROWS_AS(
      net.EncodeText(Head::kObservation, {2, 0, 3}, {1, 0, 1}),
      r3d2::ProtocolError);
}

TEST_CASE("positional encoding distinguishes token order") {
  auto params = QNetParams<float>::Init(TinyConfig(), 5);
  QNet<float> net(params);
  Vec<float> ab = net.EncodeText(Head::kObservation, {3, 4, 6, 8});
  Vec<float> ba = net.EncodeText(Head::kObservation, {4, 3, 6, 8});
  CHECK((ab - ba).cwiseAbs().maxCoeff() > 1e-6f);
}

TEST_CASE("single-token sequences pool to the token state") {
  NetConfig cfg = TinyConfig();
  auto params = QNetParams<float>::Init(cfg, 9);
  r3d2::nn::EncoderCache<float> cache;
  r3d2::nn::EncodeTokens(params.obs_encoder, cfg, {5}, &cache);
  CHECK((cache.pooled.transpose() - cache.layers.back().x2.row(0))
            .cwiseAbs()
            .maxCoeff() == 0.0f);
}

TEST_CASE("dueling head identities") {
  NetConfig cfg = TinyConfig();
  auto params = QNetParams<float>::Init(cfg, 11);
  SplitMix64 rng(4);

  std::vector<Vec<float>> cands;
  for (int i = 0; i < 4; ++i) {
    Vec<float> v(8);
    for (int j = 0; j < 8; ++j) {
      v(j) = static_cast<float>(rng.NextDouble() - 0.5);
    }
    cands.push_back(v);
  }
  Vec<float> obs(8);
  for (int j = 0; j < 8; ++j) {
    obs(j) = static_cast<float>(rng.NextDouble() - 0.5);
  }

  SUBCASE("zero advantage head collapses Q to V") {
    auto zeroed = params;
    zeroed.advantage_head.w2.setZero();
    zeroed.advantage_head.b2.setZero();
    QNet<float> net(zeroed);
    auto res = net.QValues(obs, net.InitialRecurrent(), cands);
    for (float q : res.q) CHECK(q == doctest::Approx(res.q[0]));
  }

  SUBCASE("constant advantage offset leaves Q unchanged") {
    QNet<float> net(params);
    auto base = net.QValues(obs, net.InitialRecurrent(), cands);
    auto shifted = params;
    shifted.advantage_head.b2.array() += 3.25f;
    QNet<float> net2(shifted);
    auto moved = net2.QValues(obs, net2.InitialRecurrent(), cands);
    for (size_t i = 0; i < base.q.size(); ++i) {
      CHECK(moved.q[i] == doctest::Approx(base.q[i]).epsilon(1e-5));
    }
  }

  SUBCASE("permuting candidates permutes Q identically") {
    QNet<float> net(params);
    auto base = net.QValues(obs, net.InitialRecurrent(), cands);
    std::vector<Vec<float>> perm = {cands[2], cands[0], cands[3], cands[1]};
    auto moved = net.QValues(obs, net.InitialRecurrent(), perm);
    CHECK(moved.q[0] == doctest::Approx(base.q[2]));
    CHECK(moved.q[1] == doctest::Approx(base.q[0]));
    CHECK(moved.q[2] == doctest::Approx(base.q[3]));
    CHECK(moved.q[3] == doctest::Approx(base.q[1]));
  }

  SUBCASE("empty candidate set is rejected") {
    QNet<float> net(params);
    CHECK_THROWS_AS(net.QValues(obs, net.InitialRecurrent(), {}),
                    r3d2::ProtocolError);
  }
}

TEST_CASE("forward_episode base case matches encode + q_values") {
  NetConfig cfg = TinyConfig();
  auto params = QNetParams<float>::Init(cfg, 13);
  QNet<float> net(params);
  SplitMix64 rng(21);

  EpisodeTokens ep;
  ep.obs = {RandomIds(rng, 5, cfg.vocab_size)};
  ep.cands = {{RandomIds(rng, 2, cfg.vocab_size),
               RandomIds(rng, 3, cfg.vocab_size)}};
  ep.chosen = {0};
  ep.rewards = {0.0f};

  auto fwd = net.ForwardEpisode(ep, false);
  REQUIRE(fwd.steps.size() == 1);

  Vec<float> obs = net.EncodeText(Head::kObservation, ep.obs[0]);
  std::vector<Vec<float>> cands = {
      net.EncodeText(Head::kAction, ep.cands[0][0]),
      net.EncodeText(Head::kAction, ep.cands[0][1])};
  auto direct = net.QValues(obs, net.InitialRecurrent(), cands);
  for (size_t i = 0; i < direct.q.size(); ++i) {
    CHECK(fwd.steps[0].q[i] == doctest::Approx(direct.q[i]).epsilon(1e-6));
  }
}

TEST_CASE("pad steps never change live Q values") {
  NetConfig cfg = TinyConfig();
  auto params = QNetParams<float>::Init(cfg, 17);
  QNet<float> net(params);
  SplitMix64 rng(22);
  EpisodeTokens ep = TinyEpisode(rng, cfg.vocab_size);

  auto base = net.ForwardEpisode(ep, false);

  EpisodeTokens padded = ep;
  for (int i = 0; i < 3; ++i) {
    padded.obs.push_back({});
    padded.cands.push_back({});
    padded.chosen.push_back(0);
    padded.rewards.push_back(0.0f);
  }
  auto with_pads = net.ForwardEpisode(padded, false);
  REQUIRE(with_pads.steps.size() == base.steps.size());
  for (size_t t = 0; t < base.steps.size(); ++t) {
    for (size_t k = 0; k < base.steps[t].q.size(); ++k) {
      CHECK(with_pads.steps[t].q[k] ==
            doctest::Approx(base.steps[t].q[k]).epsilon(1e-6));
    }
  }
}

TEST_CASE("shuffling candidates at one step only permutes that step") {
  for (bool act_lstm : {false, true}) {
    CAPTURE(act_lstm);
    NetConfig cfg = TinyConfig(act_lstm);
    auto params = QNetParams<float>::Init(cfg, 19);
    QNet<float> net(params);
    SplitMix64 rng(23);
    EpisodeTokens ep = TinyEpisode(rng, cfg.vocab_size);

    auto base = net.ForwardEpisode(ep, false);

    EpisodeTokens shuffled = ep;
    std::swap(shuffled.cands[1][0], shuffled.cands[1][2]);
    // chosen index follows the same action (it was index 0, now at 2)
    shuffled.chosen[1] = 2;
    auto moved = net.ForwardEpisode(shuffled, false);

    CHECK(moved.steps[1].q[0] == doctest::Approx(base.steps[1].q[2]));
    CHECK(moved.steps[1].q[2] == doctest::Approx(base.steps[1].q[0]));
    for (size_t k = 0; k < base.steps[0].q.size(); ++k) {
      CHECK(moved.steps[0].q[k] == doctest::Approx(base.steps[0].q[k]));
    }
    for (size_t k = 0; k < base.steps[2].q.size(); ++k) {
      CHECK(moved.steps[2].q[k] ==
            doctest::Approx(base.steps[2].q[k]).epsilon(1e-6));
    }
  }
}

TEST_CASE("misaligned episode streams are rejected") {
  NetConfig cfg = TinyConfig();
  auto params = QNetParams<float>::Init(cfg, 29);
  QNet<float> net(params);
  EpisodeTokens ep;
  ep.obs = {{2, 3}, {4, 5}};
  ep.cands = {{{2}}};
  ep.chosen = {0, 0};
  ep.rewards = {0.0f, 0.0f};
  CHECK_THROWS_AS(net.ForwardEpisode(ep, false), r3d2::ProtocolError);
}

TEST_CASE("value-head bias gradient matches the hand derivative") {
  NetConfig cfg = TinyConfig();
  auto params = QNetParams<double>::Init(cfg, 31);
  QNet<double> net(params);
  SplitMix64 rng(37);

  EpisodeTokens ep;
  ep.obs = {RandomIds(rng, 4, cfg.vocab_size)};
  ep.cands = {{RandomIds(rng, 2, cfg.vocab_size)}};
  ep.chosen = {0};
  ep.rewards = {0.0f};

  auto fwd = net.ForwardEpisode(ep, true);
  const double k = 0.75;
  const double q = fwd.steps[0].q[0];

  auto grads = params.ZerosLike();
  net.BackwardEpisode(ep, fwd, {{2.0 * (q - k)}}, &grads);
  // With one candidate Q == V, and V depends on value_b2 with unit slope.
  CHECK(grads.value_head.b2(0, 0) == doctest::Approx(2.0 * (q - k)));
}

TEST_CASE("gradients match central finite differences") {
  for (bool act_lstm : {false, true}) {
    CAPTURE(act_lstm);
    NetConfig cfg = TinyConfig(act_lstm);
    auto params = QNetParams<double>::Init(cfg, 41);
    SplitMix64 rng(43);
    EpisodeTokens ep = TinyEpisode(rng, cfg.vocab_size);

    // Frozen targets give the loss a nonzero gradient everywhere.
    QNet<double> net(params);
    auto fwd = net.ForwardEpisode(ep, true);
    std::vector<std::vector<double>> targets;
    std::vector<std::vector<double>> dq;
    for (auto& step : fwd.steps) {
      std::vector<double> trow, drow;
      for (double q : step.q) {
        double target = q + 0.5 + 0.25 * static_cast<double>(rng.NextDouble());
        trow.push_back(target);
        drow.push_back(2.0 * (q - target));
      }
      targets.push_back(trow);
      dq.push_back(drow);
    }

    auto grads = params.ZerosLike();
    net.BackwardEpisode(ep, fwd, dq, &grads);

    const double h = 1e-4;
    auto named = NamedArrays(params);
    auto named_grads = NamedArrays(grads);
    double worst = 0;
    std::string worst_name;
    for (size_t a = 0; a < named.size(); ++a) {
      Mat<double>* mat = named[a].second;
      const Mat<double>& grad = *named_grads[a].second;
      for (Eigen::Index idx = 0; idx < mat->size(); ++idx) {
        double saved = mat->data()[idx];
        mat->data()[idx] = saved + h;
        double up = EpisodeLoss(params, ep, targets);
        mat->data()[idx] = saved - h;
        double down = EpisodeLoss(params, ep, targets);
        mat->data()[idx] = saved;
        double fd = (up - down) / (2 * h);
        double g = grad.data()[idx];
        double rel = std::abs(g - fd) / std::max({std::abs(g), std::abs(fd),
                                                  1e-3});
        if (rel > worst) {
          worst = rel;
          worst_name = named[a].first;
        }
      }
    }
    CAPTURE(worst_name);
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("encoder gradients are withheld off the update period") {
  NetConfig cfg = TinyConfig();
  cfg.encoder_update_period = 5;
  auto params = QNetParams<float>::Init(cfg, 47);
  QNet<float> net(params);
  SplitMix64 rng(53);
  EpisodeTokens ep = TinyEpisode(rng, cfg.vocab_size);

  for (int64_t step = 0; step < 10; ++step) {
    auto fwd = net.ForwardEpisode(ep, true);
    std::vector<std::vector<float>> dq;
    for (auto& s : fwd.steps) dq.push_back(std::vector<float>(s.q.size(), 1));
    auto grads = params.ZerosLike();
    net.BackwardEpisode(ep, fwd, dq, &grads);
    r3d2::nn::MaybeZeroEncoderGrads(&grads, step);

    float encoder_norm = 0, other_norm = 0;
    for (auto& [name, mat] : NamedArrays(grads)) {
      float n = mat->cwiseAbs().sum();
      if (r3d2::nn::IsEncoderArray(name)) {
        encoder_norm += n;
      } else {
        other_norm += n;
      }
    }
    if (step % 5 == 0) {
      CHECK(encoder_norm > 0);
    } else {
      CHECK(encoder_norm == 0.0f);
    }
    CHECK(other_norm > 0);
  }
}

TEST_CASE("non-finite parameters surface as numeric errors") {
  NetConfig cfg = TinyConfig();
  auto params = QNetParams<float>::Init(cfg, 59);
  params.obs_encoder.token_embed(3, 0) =
      std::numeric_limits<float>::quiet_NaN();
  QNet<float> net(params);
  EpisodeTokens ep;
  ep.obs = {{3, 4}};
  ep.cands = {{{5}}};
  ep.chosen = {0};
  ep.rewards = {0.0f};
  CHECK_THROWS_AS(net.ForwardEpisode(ep, false), r3d2::NumericError);
}

TEST_CASE("checkpoints round-trip and validate on import") {
  NetConfig cfg = TinyConfig();
  auto params = QNetParams<float>::Init(cfg, 61);
  std::string vocab_text = "<pad>\n<unk>\nplay\n";
  std::string path = "test_ckpt.bin";
  r3d2::nn::TextOptionsMeta meta{true, false};
  r3d2::nn::SaveCheckpoint(path, params, meta, vocab_text, 1234);

  auto ckpt = r3d2::nn::LoadCheckpoint(path);
  CHECK(ckpt.train_step == 1234);
  CHECK(ckpt.vocab_text == vocab_text);
  CHECK(ckpt.text_options.include_player_knowledge);
  CHECK(!ckpt.text_options.include_last_action);
  CHECK(ckpt.params.config == cfg);
  auto a = NamedArrays(params);
  auto b = NamedArrays(ckpt.params);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(*a[i].second == *b[i].second);
  }

  // Import with a matching config succeeds; a differing ffn_dim fails.
  auto imported = r3d2::nn::ImportParams(cfg, path);
  CHECK(imported.obs_lstm.w_input == params.obs_lstm.w_input);
  NetConfig other = cfg;
  other.ffn_dim = 24;
  CHECK_THROWS_WITH_AS(r3d2::nn::ImportParams(other, path),
                       doctest::Contains("ffn_dim"), r3d2::LoadError);
  std::remove(path.c_str());
}
