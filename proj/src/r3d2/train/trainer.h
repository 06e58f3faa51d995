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

#ifndef R3D2_TRAIN_TRAINER_H_
#define R3D2_TRAIN_TRAINER_H_

#include <memory>
#include <mutex>
#include <string>

#include "r3d2/replay/buffer.h"
#include "r3d2/text/vocab.h"
#include "r3d2/train/learner.h"
#include "r3d2/train/train_config.h"

namespace r3d2 {
namespace train {

// Self-play actor-learner loop. Actors are partitioned round-robin over the
// configured player-count settings and feed one shared replay buffer; the
// learner owns the single mutable parameter copy and publishes read-only
// snapshots. The deterministic mode interleaves one actor per setting with
// the learner on a single thread and reproduces bit-for-bit.
class Trainer {
 public:
  explicit Trainer(TrainConfig config);

  // Full run: epochs x updates_per_epoch learner steps, a checkpoint per
  // epoch under out_dir, metrics as JSON lines.
  void Run();

  // Greedy self-play probe of the given parameters; returns the mean score.
  double ProbeSelfPlay(const nn::QNetParams<float>& params, int players,
                       int games, uint64_t seed) const;

  Learner& learner() { return *learner_; }
  replay::ReplayBuffer& buffer() { return *buffer_; }
  const text::Vocab& vocab() const { return vocab_; }
  const TrainConfig& config() const { return config_; }

  // Measured uniform-random-policy baseline for a setting, used by the
  // learning smoke checks and reported alongside probes.
  double RandomBaseline(int players, int games, uint64_t seed) const;

 private:
  void RunDeterministic(int64_t total_steps);
  void RunThreaded(int64_t total_steps);
  void SaveEpoch(int epoch);
  void PublishSnapshot();
  std::shared_ptr<const nn::QNetParams<float>> Snapshot() const;

  TrainConfig config_;
  text::Vocab vocab_;
  std::unique_ptr<replay::ReplayBuffer> buffer_;
  std::unique_ptr<Learner> learner_;

  mutable std::mutex snapshot_mu_;
  std::shared_ptr<const nn::QNetParams<float>> snapshot_;

  mutable std::mutex metrics_mu_;
  std::string metrics_path_;
};

}  // namespace train
}  // namespace r3d2

#endif  // R3D2_TRAIN_TRAINER_H_
