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

#include "r3d2/replay/buffer.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "r3d2/rng.h"
#include "r3d2/util.h"

namespace r3d2 {
namespace replay {

ReplayBuffer::ReplayBuffer(const BufferConfig& config)
    : config_(config), tree_(config.capacity) {
  slots_.resize(config.capacity);
  stamps_.assign(config.capacity, 0);
}

int ReplayBuffer::Append(Trajectory trajectory) {
  trajectory.tokens.Validate();
  const int live = trajectory.tokens.LiveLength();
  if (live > config_.max_trajectory_length) {
    throw ProtocolError("trajectory of " + std::to_string(live) +
                        " steps exceeds max_trajectory_length " +
                        std::to_string(config_.max_trajectory_length));
  }
  std::lock_guard<std::mutex> lock(mu_);
  int slot = write_cursor_;
  slots_[slot] = std::move(trajectory);
  ++stamps_[slot];
  tree_.Set(slot, std::pow(max_raw_priority_, config_.alpha));
  write_cursor_ = (write_cursor_ + 1) % config_.capacity;
  size_ = std::min(size_ + 1, config_.capacity);
  frames_ += live;
  return slot;
}

SampledBatch ReplayBuffer::Sample(int batch_size, uint64_t seed) {
  std::lock_guard<std::mutex> lock(mu_);
  if (frames_ < config_.burn_in_frames) {
    throw NotReadyError("replay has " + std::to_string(frames_) +
                        " frames, burn-in requires " +
                        std::to_string(config_.burn_in_frames));
  }
  R3D2_CHECK(size_ > 0, "cannot sample from an empty buffer");
  double total = tree_.Total();
  R3D2_CHECK(total > 0.0, "all priorities are zero");

  SampledBatch batch;
  SplitMix64 rng(seed);
  double segment = total / batch_size;
  double max_weight = 0.0;
  for (int i = 0; i < batch_size; ++i) {
    double mass = (static_cast<double>(i) + rng.NextDouble()) * segment;
    int slot = tree_.Find(std::min(mass, std::nexttoward(total, 0.0)));
    double prob = tree_.Get(slot) / total;
    double weight = std::pow(static_cast<double>(size_) * prob, -config_.beta);
    batch.trajectories.push_back(slots_[slot]);
    batch.weights.push_back(weight);
    batch.slots.push_back(slot);
    batch.stamps.push_back(stamps_[slot]);
    max_weight = std::max(max_weight, weight);
  }
  for (double& w : batch.weights) w /= max_weight;
  return batch;
}

void ReplayBuffer::UpdatePriorities(
    const std::vector<int>& slots, const std::vector<uint64_t>& stamps,
    const std::vector<std::vector<float>>& abs_td) {
  R3D2_CHECK(slots.size() == stamps.size() && slots.size() == abs_td.size(),
             "priority update arity mismatch");
  std::lock_guard<std::mutex> lock(mu_);
  for (size_t i = 0; i < slots.size(); ++i) {
    int slot = slots[i];
    R3D2_CHECK(slot >= 0 && slot < config_.capacity, "slot out of range");
    if (stamps_[slot] != stamps[i]) {
      ++stale_updates_;  // overwritten since sampling; drop silently
      continue;
    }
    double max_td = 0.0, sum_td = 0.0;
    for (float v : abs_td[i]) {
      max_td = std::max(max_td, static_cast<double>(std::abs(v)));
      sum_td += std::abs(v);
    }
    double mean_td = abs_td[i].empty() ? 0.0 : sum_td / abs_td[i].size();
    double raw = config_.priority_eta * max_td +
                 (1.0 - config_.priority_eta) * mean_td;
    max_raw_priority_ = std::max(max_raw_priority_, raw);
    tree_.Set(slot, std::pow(raw, config_.alpha));
  }
}

int ReplayBuffer::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return size_;
}

int64_t ReplayBuffer::frames() const {
  std::lock_guard<std::mutex> lock(mu_);
  return frames_;
}

bool ReplayBuffer::Ready() const {
  std::lock_guard<std::mutex> lock(mu_);
  return frames_ >= config_.burn_in_frames && size_ > 0;
}

int64_t ReplayBuffer::stale_updates() const {
  std::lock_guard<std::mutex> lock(mu_);
  return stale_updates_;
}

double ReplayBuffer::TotalMass() const {
  std::lock_guard<std::mutex> lock(mu_);
  return tree_.Total();
}

std::string ReplayBuffer::DebugDump() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::ostringstream out;
  for (int i = 0; i < size_; ++i) {
    out << "{\"slot\":" << i
        << ",\"length\":" << slots_[i].tokens.LiveLength()
        << ",\"player_count\":" << slots_[i].player_count
        << ",\"priority\":" << tree_.Get(i) << "}\n";
  }
  return out.str();
}

}  // namespace replay
}  // namespace r3d2
