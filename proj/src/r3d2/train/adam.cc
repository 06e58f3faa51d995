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

#include "r3d2/train/adam.h"

#include <cmath>

#include "r3d2/util.h"

namespace r3d2 {
namespace train {

double GlobalNormClip(nn::QNetParams<float>* grads, double max_norm) {
  double sq = 0;
  for (auto& [name, mat] : NamedArrays(*grads)) {
    sq += mat->template cast<double>().squaredNorm();
  }
  double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0) {
    float scale = static_cast<float>(max_norm / norm);
    for (auto& [name, mat] : NamedArrays(*grads)) *mat *= scale;
  }
  return norm;
}

Adam::Adam(const nn::QNetParams<float>& shape, const AdamConfig& config)
    : config_(config), m_(shape.ZerosLike()), v_(shape.ZerosLike()) {}

void Adam::Step(nn::QNetParams<float>* params,
                const nn::QNetParams<float>& grads, bool update_encoder) {
  ++t_;
  const float c1 =
      1.0f - static_cast<float>(std::pow(config_.beta1, static_cast<double>(t_)));
  const float c2 =
      1.0f - static_cast<float>(std::pow(config_.beta2, static_cast<double>(t_)));
  const float b1 = static_cast<float>(config_.beta1);
  const float b2 = static_cast<float>(config_.beta2);
  const float lr = static_cast<float>(config_.lr);
  const float eps = static_cast<float>(config_.eps);

  auto p = NamedArrays(*params);
  auto g = NamedArrays(grads);
  auto m = NamedArrays(m_);
  auto v = NamedArrays(v_);
  R3D2_CHECK(p.size() == g.size() && p.size() == m.size(), "shape mismatch");
  for (size_t i = 0; i < p.size(); ++i) {
    if (!update_encoder && nn::IsEncoderArray(p[i].first)) continue;
    auto& mm = *m[i].second;
    auto& vv = *v[i].second;
    const auto& gg = *g[i].second;
    mm = b1 * mm + (1.0f - b1) * gg;
    vv = b2 * vv.array().matrix() +
         (1.0f - b2) * gg.cwiseProduct(gg);
    *p[i].second -=
        (lr * (mm / c1).array() / ((vv / c2).array().sqrt() + eps)).matrix();
  }
}

}  // namespace train
}  // namespace r3d2
