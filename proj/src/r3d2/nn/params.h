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

#ifndef R3D2_NN_PARAMS_H_
#define R3D2_NN_PARAMS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "r3d2/nn/net_config.h"
#include "r3d2/nn/types.h"

namespace r3d2 {
namespace nn {

template <typename T>
struct EncoderLayerParams {
  Mat<T> wq, bq, wk, bk, wv, bv, wo, bo;  // d x d weights, 1 x d biases
  Mat<T> ln1_gamma, ln1_beta;             // 1 x d
  Mat<T> w1, b1, w2, b2;                  // d x f, 1 x f, f x d, 1 x d
  Mat<T> ln2_gamma, ln2_beta;             // 1 x d
};

template <typename T>
struct EncoderParams {
  Mat<T> token_embed;  // vocab x d
  Mat<T> pos_embed;    // max_seq x d
  std::vector<EncoderLayerParams<T>> layers;
};

template <typename T>
struct LstmParams {
  // Gate rows ordered [input; forget; cell; output].
  Mat<T> w_input;   // 4d x d
  Mat<T> w_hidden;  // 4d x d
  Mat<T> bias;      // 4d x 1
};

template <typename T>
struct MlpParams {
  Mat<T> w1, b1;  // d x d, d x 1
  Mat<T> w2, b2;  // 1 x d, 1 x 1
};

// All trainable arrays of the dual-head network. The trainer keeps a second
// structurally identical copy as the frozen target.
template <typename T>
struct QNetParams {
  NetConfig config;
  EncoderParams<T> obs_encoder;
  EncoderParams<T> act_encoder;
  LstmParams<T> obs_lstm;
  LstmParams<T> act_lstm;  // allocated only when config.action_head_lstm
  MlpParams<T> value_head;
  MlpParams<T> advantage_head;

  // Deterministic seeded initialization: scaled-uniform fan-in for linear
  // maps, unit-gain layer norms, +1 forget-gate bias.
  static QNetParams Init(const NetConfig& config, uint64_t seed);

  // Same structure, all arrays zero; gradient and optimizer buffers.
  QNetParams ZerosLike() const;

  void SetZero();
};

// Stable name -> array enumeration; the order defines the checkpoint layout
// and the optimizer state mapping.
template <typename T>
std::vector<std::pair<std::string, const Mat<T>*>> NamedArrays(
    const QNetParams<T>& params);
template <typename T>
std::vector<std::pair<std::string, Mat<T>*>> NamedArrays(QNetParams<T>& params);

// True for arrays belonging to either text-encoder head (the "LM" part that
// encoder_update_period gates).
bool IsEncoderArray(const std::string& name);

template <typename T>
QNetParams<T> CastParams(const QNetParams<float>& params);

}  // namespace nn
}  // namespace r3d2

#endif  // R3D2_NN_PARAMS_H_
