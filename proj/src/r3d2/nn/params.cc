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

#include "r3d2/nn/params.h"

#include <cmath>

#include "r3d2/rng.h"

namespace r3d2 {
namespace nn {

namespace {

template <typename T>
void FillUniform(Mat<T>& m, double bound, SplitMix64& rng) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      m(r, c) = static_cast<T>((2.0 * rng.NextDouble() - 1.0) * bound);
    }
  }
}

template <typename T>
EncoderParams<T> InitEncoder(const NetConfig& cfg, SplitMix64& rng) {
  const int d = cfg.model_dim;
  const int f = cfg.ffn_dim;
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  const double inv_sqrt_f = 1.0 / std::sqrt(static_cast<double>(f));

  EncoderParams<T> enc;
  enc.token_embed.resize(cfg.vocab_size, d);
  FillUniform(enc.token_embed, inv_sqrt_d, rng);
  enc.pos_embed.resize(cfg.max_seq_len, d);
  FillUniform(enc.pos_embed, inv_sqrt_d, rng);
  for (int l = 0; l < cfg.layers; ++l) {
    EncoderLayerParams<T> layer;
    for (Mat<T>* w : {&layer.wq, &layer.wk, &layer.wv, &layer.wo}) {
      w->resize(d, d);
      FillUniform(*w, inv_sqrt_d, rng);
    }
    for (Mat<T>* b : {&layer.bq, &layer.bk, &layer.bv, &layer.bo}) {
      *b = Mat<T>::Zero(1, d);
    }
    layer.ln1_gamma = Mat<T>::Ones(1, d);
    layer.ln1_beta = Mat<T>::Zero(1, d);
    layer.w1.resize(d, f);
    FillUniform(layer.w1, inv_sqrt_d, rng);
    layer.b1 = Mat<T>::Zero(1, f);
    layer.w2.resize(f, d);
    FillUniform(layer.w2, inv_sqrt_f, rng);
    layer.b2 = Mat<T>::Zero(1, d);
    layer.ln2_gamma = Mat<T>::Ones(1, d);
    layer.ln2_beta = Mat<T>::Zero(1, d);
    enc.layers.push_back(std::move(layer));
  }
  return enc;
}

template <typename T>
LstmParams<T> InitLstm(const NetConfig& cfg, SplitMix64& rng) {
  const int d = cfg.model_dim;
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  LstmParams<T> lstm;
  lstm.w_input.resize(4 * d, d);
  FillUniform(lstm.w_input, inv_sqrt_d, rng);
  lstm.w_hidden.resize(4 * d, d);
  FillUniform(lstm.w_hidden, inv_sqrt_d, rng);
  lstm.bias = Mat<T>::Zero(4 * d, 1);
  lstm.bias.block(d, 0, d, 1).setOnes();  // forget gate starts open
  return lstm;
}

template <typename T>
MlpParams<T> InitMlp(const NetConfig& cfg, SplitMix64& rng) {
  const int d = cfg.model_dim;
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  MlpParams<T> mlp;
  mlp.w1.resize(d, d);
  FillUniform(mlp.w1, inv_sqrt_d, rng);
  mlp.b1 = Mat<T>::Zero(d, 1);
  mlp.w2.resize(1, d);
  FillUniform(mlp.w2, inv_sqrt_d, rng);
  mlp.b2 = Mat<T>::Zero(1, 1);
  return mlp;
}

template <typename T, typename ParamsT, typename MatT>
std::vector<std::pair<std::string, MatT*>> NamedArraysImpl(ParamsT& p) {
  std::vector<std::pair<std::string, MatT*>> out;
  auto add = [&out](const std::string& name, MatT& m) {
    out.emplace_back(name, &m);
  };
  auto add_encoder = [&](const std::string& prefix, auto& enc) {
    add(prefix + ".token_embed", enc.token_embed);
    add(prefix + ".pos_embed", enc.pos_embed);
    for (size_t l = 0; l < enc.layers.size(); ++l) {
      const std::string lp = prefix + ".layer" + std::to_string(l);
      auto& layer = enc.layers[l];
      add(lp + ".wq", layer.wq);
      add(lp + ".bq", layer.bq);
      add(lp + ".wk", layer.wk);
      add(lp + ".bk", layer.bk);
      add(lp + ".wv", layer.wv);
      add(lp + ".bv", layer.bv);
      add(lp + ".wo", layer.wo);
      add(lp + ".bo", layer.bo);
      add(lp + ".ln1_gamma", layer.ln1_gamma);
      add(lp + ".ln1_beta", layer.ln1_beta);
      add(lp + ".w1", layer.w1);
      add(lp + ".b1", layer.b1);
      add(lp + ".w2", layer.w2);
      add(lp + ".b2", layer.b2);
      add(lp + ".ln2_gamma", layer.ln2_gamma);
      add(lp + ".ln2_beta", layer.ln2_beta);
    }
  };
  auto add_lstm = [&](const std::string& prefix, auto& lstm) {
    add(prefix + ".w_input", lstm.w_input);
    add(prefix + ".w_hidden", lstm.w_hidden);
    add(prefix + ".bias", lstm.bias);
  };
  auto add_mlp = [&](const std::string& prefix, auto& mlp) {
    add(prefix + ".w1", mlp.w1);
    add(prefix + ".b1", mlp.b1);
    add(prefix + ".w2", mlp.w2);
    add(prefix + ".b2", mlp.b2);
  };

  add_encoder("obs_encoder", p.obs_encoder);
  add_encoder("act_encoder", p.act_encoder);
  add_lstm("obs_lstm", p.obs_lstm);
  if (p.config.action_head_lstm) add_lstm("act_lstm", p.act_lstm);
  add_mlp("value_head", p.value_head);
  add_mlp("advantage_head", p.advantage_head);
  return out;
}

}  // namespace

template <typename T>
QNetParams<T> QNetParams<T>::Init(const NetConfig& config, uint64_t seed) {
  config.Validate();
  SplitMix64 rng(seed);
  QNetParams<T> p;
  p.config = config;
  p.obs_encoder = InitEncoder<T>(config, rng);
  p.act_encoder = InitEncoder<T>(config, rng);
  p.obs_lstm = InitLstm<T>(config, rng);
  if (config.action_head_lstm) p.act_lstm = InitLstm<T>(config, rng);
  p.value_head = InitMlp<T>(config, rng);
  p.advantage_head = InitMlp<T>(config, rng);
  return p;
}

template <typename T>
QNetParams<T> QNetParams<T>::ZerosLike() const {
  QNetParams<T> z = *this;
  z.SetZero();
  return z;
}

template <typename T>
void QNetParams<T>::SetZero() {
  for (auto& [name, mat] : NamedArrays(*this)) mat->setZero();
}

template <typename T>
std::vector<std::pair<std::string, const Mat<T>*>> NamedArrays(
    const QNetParams<T>& params) {
  return NamedArraysImpl<T, const QNetParams<T>, const Mat<T>>(params);
}

template <typename T>
std::vector<std::pair<std::string, Mat<T>*>> NamedArrays(
    QNetParams<T>& params) {
  return NamedArraysImpl<T, QNetParams<T>, Mat<T>>(params);
}

bool IsEncoderArray(const std::string& name) {
  return name.rfind("obs_encoder.", 0) == 0 ||
         name.rfind("act_encoder.", 0) == 0;
}

template <typename T>
QNetParams<T> CastParams(const QNetParams<float>& params) {
  QNetParams<T> out;
  out.config = params.config;
  out.obs_encoder.layers.resize(params.obs_encoder.layers.size());
  out.act_encoder.layers.resize(params.act_encoder.layers.size());
  auto src = NamedArrays(params);
  auto dst = NamedArrays(out);
  for (size_t i = 0; i < src.size(); ++i) {
    *dst[i].second = src[i].second->template cast<T>();
  }
  return out;
}

template struct QNetParams<float>;
template struct QNetParams<double>;
template std::vector<std::pair<std::string, const Mat<float>*>> NamedArrays(
    const QNetParams<float>&);
template std::vector<std::pair<std::string, const Mat<double>*>> NamedArrays(
    const QNetParams<double>&);
template std::vector<std::pair<std::string, Mat<float>*>> NamedArrays(
    QNetParams<float>&);
template std::vector<std::pair<std::string, Mat<double>*>> NamedArrays(
    QNetParams<double>&);
template QNetParams<double> CastParams<double>(const QNetParams<float>&);
template QNetParams<float> CastParams<float>(const QNetParams<float>&);

}  // namespace nn
}  // namespace r3d2
