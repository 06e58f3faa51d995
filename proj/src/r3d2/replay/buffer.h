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

#ifndef R3D2_REPLAY_BUFFER_H_
#define R3D2_REPLAY_BUFFER_H_

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "r3d2/replay/sum_tree.h"
#include "r3d2/replay/trajectory.h"

namespace r3d2 {
namespace replay {

struct BufferConfig {
  int capacity = 50000;
  double alpha = 0.9;  // priority exponent
  double beta = 0.6;   // importance-sampling exponent
  int max_trajectory_length = 80;
  int64_t burn_in_frames = 10000;  // env frames before sampling may start
  double priority_eta = 0.9;       // max/mean mixture for step TD errors
};

struct SampledBatch {
  std::vector<Trajectory> trajectories;  // immutable copies
  std::vector<double> weights;           // max-normalized importance weights
  std::vector<int> slots;
  std::vector<uint64_t> stamps;  // slot generation at sampling time
};

// Prioritized episodic replay with ring overwrite. Linearizable: concurrent
// appenders and one sampler/updater synchronize on one lock; sampled
// trajectories are copies, so learner work never holds the buffer.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(const BufferConfig& config);

  // Initial priority is the running max (1 if the buffer is empty). Throws
  // ProtocolError for over-long trajectories.
  int Append(Trajectory trajectory);

  // Stratified sampling proportional to priority^alpha. Throws NotReadyError
  // before burn_in_frames environment frames have been observed.
  SampledBatch Sample(int batch_size, uint64_t seed);

  // priority = eta * max_t |td_t| + (1 - eta) * mean_t |td_t| over live
  // steps. Updates against overwritten slots are dropped (and counted).
  void UpdatePriorities(const std::vector<int>& slots,
                        const std::vector<uint64_t>& stamps,
                        const std::vector<std::vector<float>>& abs_td);

  int size() const;
  int64_t frames() const;
  bool Ready() const;
  int64_t stale_updates() const;
  double TotalMass() const;

  // JSON lines of per-slot metadata (length, player_count, priority).
  std::string DebugDump() const;

 private:
  BufferConfig config_;
  mutable std::mutex mu_;
  std::vector<Trajectory> slots_;
  std::vector<uint64_t> stamps_;
  SumTree tree_;
  int size_ = 0;
  int write_cursor_ = 0;
  int64_t frames_ = 0;
  double max_raw_priority_ = 1.0;
  int64_t stale_updates_ = 0;
};

}  // namespace replay
}  // namespace r3d2

#endif  // R3D2_REPLAY_BUFFER_H_
