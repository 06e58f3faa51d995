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

#ifndef R3D2_TRAIN_TRAIN_CONFIG_H_
#define R3D2_TRAIN_TRAIN_CONFIG_H_

#include <cstdint>
#include <set>
#include <string>

#include "r3d2/engine/game_config.h"
#include "r3d2/nn/net_config.h"
#include "r3d2/replay/buffer.h"
#include "r3d2/text/render.h"
#include "r3d2/train/adam.h"

namespace r3d2 {
namespace train {

// Full training run description. Serialized as flat key=value text with the
// published hyper-parameter names kept verbatim as keys.
struct TrainConfig {
  std::set<int> settings = {2};  // player counts; singleton = single-setting
  int num_actors = 80;
  int epochs = 2000;
  int updates_per_epoch = 500;

  // optimizer
  double lr = 6.25e-5;
  double eps = 1.5e-5;
  double grad_clip = 5;
  int batchsize = 64;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;

  // Q learning
  int n_step = 1;
  double discount_factor = 0.999;
  int64_t target_network_sync_interval = 2500;

  // replay
  int64_t burn_in_frames = 10000;
  int replay_buffer_size = 50000;
  double priority_exponent = 0.9;
  double priority_weight = 0.6;
  int max_trajectory_length = 80;
  double priority_eta = 0.9;

  // game variant
  int colors = 5;
  int ranks = 5;
  bool include_discards = true;

  // text rendering
  bool include_player_knowledge = true;
  bool include_last_action = true;

  // network
  int layers = 2;
  int model_dim = 128;
  int attention_heads = 2;
  int ffn_dim = 512;
  int max_seq_len = 512;
  int encoder_update_period = 1;
  bool action_head_lstm = false;
  std::string init_mode = "random";  // random | import
  std::string import_path;

  // run control
  uint64_t seed = 1;
  bool deterministic = false;
  int env_steps_per_update = 4;  // deterministic-mode collection pacing
  int eval_probe_period_epochs = 50;
  int eval_probe_games = 100;
  std::string out_dir = ".";

  static TrainConfig FromFile(const std::string& path);
  static TrainConfig FromString(const std::string& text);
  // Single key=value override; unknown keys are rejected.
  void Set(const std::string& key, const std::string& value);
  std::string ToString() const;
  void Validate() const;

  engine::GameConfig Game(int players, uint64_t game_seed) const;
  text::RenderOptions Render() const;
  nn::NetConfig Net(int vocab_size) const;
  replay::BufferConfig Buffer() const;
  AdamConfig Adam() const;
};

}  // namespace train
}  // namespace r3d2

#endif  // R3D2_TRAIN_TRAIN_CONFIG_H_
