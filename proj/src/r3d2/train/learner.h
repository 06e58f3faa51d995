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

#ifndef R3D2_TRAIN_LEARNER_H_
#define R3D2_TRAIN_LEARNER_H_

#include <cstdint>

#include "r3d2/nn/params.h"
#include "r3d2/replay/buffer.h"
#include "r3d2/train/adam.h"

namespace r3d2 {
namespace train {

struct LearnerOptions {
  int batchsize = 64;
  double discount_factor = 0.999;
  int n_step = 1;
  double grad_clip = 5;
  int64_t target_network_sync_interval = 2500;
  AdamConfig adam;
  int workers = 1;  // fixed partition + ordered reduce keeps runs repeatable
};

struct LearnerMetrics {
  int64_t step = 0;
  double loss = 0;
  double grad_norm = 0;  // pre-clip global norm
  double mean_abs_td = 0;
};

// Owns the single mutable parameter copy and its frozen target. One step =
// sample, weighted TD loss with double-DQN targets, clip, Adam, priority
// refresh, periodic target sync.
class Learner {
 public:
  Learner(nn::QNetParams<float> params, const LearnerOptions& options);

  LearnerMetrics Step(replay::ReplayBuffer& buffer, uint64_t sample_seed);

  void SyncTarget() { target_ = online_; }
  const nn::QNetParams<float>& online() const { return online_; }
  const nn::QNetParams<float>& target() const { return target_; }
  int64_t steps() const { return step_; }

 private:
  LearnerOptions options_;
  nn::QNetParams<float> online_;
  nn::QNetParams<float> target_;
  Adam adam_;
  int64_t step_ = 0;
};

}  // namespace train
}  // namespace r3d2

#endif  // R3D2_TRAIN_LEARNER_H_
