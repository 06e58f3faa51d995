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

#include "r3d2/train/learner.h"

#include <cmath>
#include <thread>
#include <vector>

#include "r3d2/nn/qnet.h"
#include "r3d2/train/td.h"
#include "r3d2/util.h"

namespace r3d2 {
namespace train {

Learner::Learner(nn::QNetParams<float> params, const LearnerOptions& options)
    : options_(options),
      online_(std::move(params)),
      target_(online_),
      adam_(online_, options.adam) {}

LearnerMetrics Learner::Step(replay::ReplayBuffer& buffer,
                             uint64_t sample_seed) {
  replay::SampledBatch batch = buffer.Sample(options_.batchsize, sample_seed);
  const int n = static_cast<int>(batch.trajectories.size());

  int64_t total_live = 0;
  for (const auto& traj : batch.trajectories) {
    total_live += traj.tokens.LiveLength();
  }
  R3D2_CHECK(total_live > 0, "sampled batch has no live steps");

  const int workers =
      std::max(1, std::min<int>(options_.workers, n));
  std::vector<nn::QNetParams<float>> grads;
  grads.reserve(workers);
  for (int w = 0; w < workers; ++w) grads.push_back(online_.ZerosLike());
  std::vector<double> loss_acc(workers, 0.0);
  std::vector<double> abs_td_acc(workers, 0.0);
  std::vector<std::vector<std::vector<float>>> abs_td(workers);
  for (auto& v : abs_td) v.resize(n);

  auto work = [&](int w) {
    nn::QNet<float> online_net(online_);
    nn::QNet<float> target_net(target_);
    for (int idx = w; idx < n; idx += workers) {
      const replay::Trajectory& traj = batch.trajectories[idx];
      auto fwd = online_net.ForwardEpisode(traj.tokens, /*keep_caches=*/true);
      auto tgt = target_net.ForwardEpisode(traj.tokens, /*keep_caches=*/false);
      std::vector<float> targets =
          ComputeTargets(fwd.Q(), tgt.Q(), traj.tokens.rewards,
                         options_.discount_factor, options_.n_step);

      const int live = static_cast<int>(fwd.steps.size());
      const double weight = batch.weights[idx];
      std::vector<std::vector<float>> dq(live);
      abs_td[w][idx].resize(live);
      for (int t = 0; t < live; ++t) {
        const int chosen = traj.tokens.chosen[t];
        const double delta =
            static_cast<double>(fwd.steps[t].q[chosen]) - targets[t];
        dq[t].assign(fwd.steps[t].q.size(), 0.0f);
        dq[t][chosen] = static_cast<float>(2.0 * weight * delta /
                                           static_cast<double>(total_live));
        abs_td[w][idx][t] = static_cast<float>(std::abs(delta));
        loss_acc[w] += weight * delta * delta;
        abs_td_acc[w] += std::abs(delta);
      }
      online_net.BackwardEpisode(traj.tokens, fwd, dq, &grads[w]);
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  // Ordered reduction keeps the update independent of thread timing.
  nn::QNetParams<float>& total = grads[0];
  {
    auto dst = NamedArrays(total);
    for (int w = 1; w < workers; ++w) {
      auto src = NamedArrays(grads[w]);
      for (size_t i = 0; i < dst.size(); ++i) *dst[i].second += *src[i].second;
    }
  }

  nn::MaybeZeroEncoderGrads(&total, step_);
  double grad_norm = GlobalNormClip(&total, options_.grad_clip);
  if (!std::isfinite(grad_norm)) {
    throw NumericError("non-finite gradient norm at learner step " +
                       std::to_string(step_));
  }
  const bool update_encoder =
      online_.config.encoder_update_period <= 1 ||
      step_ % online_.config.encoder_update_period == 0;
  adam_.Step(&online_, total, update_encoder);

  std::vector<std::vector<float>> td_by_slot(n);
  for (int w = 0; w < workers; ++w) {
    for (int idx = w; idx < n; idx += workers) {
      td_by_slot[idx] = std::move(abs_td[w][idx]);
    }
  }
  buffer.UpdatePriorities(batch.slots, batch.stamps, td_by_slot);

  ++step_;
  if (step_ % options_.target_network_sync_interval == 0) SyncTarget();

  LearnerMetrics metrics;
  metrics.step = step_;
  double loss_total = 0, abs_total = 0;
  for (int w = 0; w < workers; ++w) {
    loss_total += loss_acc[w];
    abs_total += abs_td_acc[w];
  }
  metrics.loss = loss_total / static_cast<double>(total_live);
  metrics.grad_norm = grad_norm;
  metrics.mean_abs_td = abs_total / static_cast<double>(total_live);
  return metrics;
}

}  // namespace train
}  // namespace r3d2
