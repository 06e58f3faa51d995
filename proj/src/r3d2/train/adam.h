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

#ifndef R3D2_TRAIN_ADAM_H_
#define R3D2_TRAIN_ADAM_H_

#include <cstdint>

#include "r3d2/nn/params.h"

namespace r3d2 {
namespace train {

struct AdamConfig {
  double lr = 6.25e-5;
  double eps = 1.5e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
};

// Scales all gradient arrays so the global norm is at most max_norm; returns
// the pre-clip norm.
double GlobalNormClip(nn::QNetParams<float>* grads, double max_norm);

class Adam {
 public:
  Adam(const nn::QNetParams<float>& shape, const AdamConfig& config);

  // When update_encoder is false the text-encoder arrays keep their
  // parameters and moments untouched (a frozen step for the LM heads).
  void Step(nn::QNetParams<float>* params, const nn::QNetParams<float>& grads,
            bool update_encoder = true);

  int64_t steps() const { return t_; }

 private:
  AdamConfig config_;
  nn::QNetParams<float> m_, v_;
  int64_t t_ = 0;
};

}  // namespace train
}  // namespace r3d2

#endif  // R3D2_TRAIN_ADAM_H_
