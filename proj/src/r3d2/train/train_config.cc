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

#include "r3d2/train/train_config.h"

#include <fstream>
#include <sstream>

#include "r3d2/util.h"

namespace r3d2 {
namespace train {

namespace {

bool ParseBool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("expected a boolean, got \"" + v + "\"");
}

std::set<int> ParseSettings(const std::string& v) {
  std::set<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.insert(std::stoi(item));
  }
  if (out.empty()) throw ConfigError("settings must be nonempty");
  return out;
}

std::string SettingsToString(const std::set<int>& settings) {
  std::string out;
  for (int s : settings) {
    if (!out.empty()) out += ",";
    out += std::to_string(s);
  }
  return out;
}

}  // namespace

TrainConfig TrainConfig::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return FromString(ss.str());
}

TrainConfig TrainConfig::FromString(const std::string& text) {
  TrainConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        " is not key=value: \"" + line + "\"");
    }
    cfg.Set(line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

void TrainConfig::Set(const std::string& key, const std::string& value) {
  if (key == "settings") settings = ParseSettings(value);
  else if (key == "num_actors") num_actors = std::stoi(value);
  else if (key == "epochs") epochs = std::stoi(value);
  else if (key == "updates_per_epoch") updates_per_epoch = std::stoi(value);
  else if (key == "lr") lr = std::stod(value);
  else if (key == "eps") eps = std::stod(value);
  else if (key == "grad_clip") grad_clip = std::stod(value);
  else if (key == "batchsize") batchsize = std::stoi(value);
  else if (key == "adam_beta1") adam_beta1 = std::stod(value);
  else if (key == "adam_beta2") adam_beta2 = std::stod(value);
  else if (key == "n_step") n_step = std::stoi(value);
  else if (key == "discount_factor") discount_factor = std::stod(value);
  else if (key == "target_network_sync_interval")
    target_network_sync_interval = std::stoll(value);
  else if (key == "burn_in_frames") burn_in_frames = std::stoll(value);
  else if (key == "replay_buffer_size") replay_buffer_size = std::stoi(value);
  else if (key == "priority_exponent") priority_exponent = std::stod(value);
  else if (key == "priority_weight") priority_weight = std::stod(value);
  else if (key == "max_trajectory_length")
    max_trajectory_length = std::stoi(value);
  else if (key == "priority_eta") priority_eta = std::stod(value);
  else if (key == "colors") colors = std::stoi(value);
  else if (key == "ranks") ranks = std::stoi(value);
  else if (key == "include_discards") include_discards = ParseBool(value);
  else if (key == "include_player_knowledge")
    include_player_knowledge = ParseBool(value);
  else if (key == "include_last_action")
    include_last_action = ParseBool(value);
  else if (key == "layers") layers = std::stoi(value);
  else if (key == "model_dim") model_dim = std::stoi(value);
  else if (key == "attention_heads") attention_heads = std::stoi(value);
  else if (key == "ffn_dim") ffn_dim = std::stoi(value);
  else if (key == "max_seq_len") max_seq_len = std::stoi(value);
  else if (key == "encoder_update_period")
    encoder_update_period = std::stoi(value);
  else if (key == "action_head_lstm") action_head_lstm = ParseBool(value);
  else if (key == "init_mode") init_mode = value;
  else if (key == "import_path") import_path = value;
  else if (key == "seed") seed = std::stoull(value);
  else if (key == "deterministic") deterministic = ParseBool(value);
  else if (key == "env_steps_per_update")
    env_steps_per_update = std::stoi(value);
  else if (key == "eval_probe_period_epochs")
    eval_probe_period_epochs = std::stoi(value);
  else if (key == "eval_probe_games") eval_probe_games = std::stoi(value);
  else if (key == "out_dir") out_dir = value;
  else throw ConfigError("unknown config key: \"" + key + "\"");
}

std::string TrainConfig::ToString() const {
  std::ostringstream out;
  out << "settings=" << SettingsToString(settings) << "\n";
  out << "num_actors=" << num_actors << "\n";
  out << "epochs=" << epochs << "\n";
  out << "updates_per_epoch=" << updates_per_epoch << "\n";
  out << "lr=" << lr << "\n";
  out << "eps=" << eps << "\n";
  out << "grad_clip=" << grad_clip << "\n";
  out << "batchsize=" << batchsize << "\n";
  out << "adam_beta1=" << adam_beta1 << "\n";
  out << "adam_beta2=" << adam_beta2 << "\n";
  out << "n_step=" << n_step << "\n";
  out << "discount_factor=" << discount_factor << "\n";
  out << "target_network_sync_interval=" << target_network_sync_interval
      << "\n";
  out << "burn_in_frames=" << burn_in_frames << "\n";
  out << "replay_buffer_size=" << replay_buffer_size << "\n";
  out << "priority_exponent=" << priority_exponent << "\n";
  out << "priority_weight=" << priority_weight << "\n";
  out << "max_trajectory_length=" << max_trajectory_length << "\n";
  out << "priority_eta=" << priority_eta << "\n";
  out << "colors=" << colors << "\n";
  out << "ranks=" << ranks << "\n";
  out << "include_discards=" << (include_discards ? "true" : "false") << "\n";
  out << "include_player_knowledge="
      << (include_player_knowledge ? "true" : "false") << "\n";
  out << "include_last_action=" << (include_last_action ? "true" : "false")
      << "\n";
  out << "layers=" << layers << "\n";
  out << "model_dim=" << model_dim << "\n";
  out << "attention_heads=" << attention_heads << "\n";
  out << "ffn_dim=" << ffn_dim << "\n";
  out << "max_seq_len=" << max_seq_len << "\n";
  out << "encoder_update_period=" << encoder_update_period << "\n";
  out << "action_head_lstm=" << (action_head_lstm ? "true" : "false") << "\n";
  out << "init_mode=" << init_mode << "\n";
  if (!import_path.empty()) out << "import_path=" << import_path << "\n";
  out << "seed=" << seed << "\n";
  out << "deterministic=" << (deterministic ? "true" : "false") << "\n";
  out << "env_steps_per_update=" << env_steps_per_update << "\n";
  out << "eval_probe_period_epochs=" << eval_probe_period_epochs << "\n";
  out << "eval_probe_games=" << eval_probe_games << "\n";
  out << "out_dir=" << out_dir << "\n";
  return out.str();
}

void TrainConfig::Validate() const {
  if (settings.empty()) throw ConfigError("settings must be nonempty");
  for (int s : settings) {
    if (s < 2 || s > 5) {
      throw ConfigError("setting " + std::to_string(s) + " out of [2,5]");
    }
  }
  if (num_actors < 1 || epochs < 1 || updates_per_epoch < 1 ||
      batchsize < 1 || n_step < 1 || env_steps_per_update < 1) {
    throw ConfigError("counts must be positive");
  }
  if (lr <= 0 || grad_clip <= 0 || discount_factor <= 0 ||
      target_network_sync_interval < 1) {
    throw ConfigError("optimizer settings must be positive");
  }
  if (init_mode != "random" && init_mode != "import") {
    throw ConfigError("init_mode must be random or import");
  }
  if (init_mode == "import" && import_path.empty()) {
    throw ConfigError("import init requires import_path");
  }
  Game(*settings.begin(), seed).Validate();
}

engine::GameConfig TrainConfig::Game(int players, uint64_t game_seed) const {
  engine::GameConfig game;
  game.players = players;
  game.colors = colors;
  game.ranks = ranks;
  game.seed = game_seed;
  game.include_discards_in_obs = include_discards;
  return game;
}

text::RenderOptions TrainConfig::Render() const {
  text::RenderOptions opts;
  opts.include_player_knowledge = include_player_knowledge;
  opts.include_last_action = include_last_action;
  return opts;
}

nn::NetConfig TrainConfig::Net(int vocab_size) const {
  nn::NetConfig net;
  net.layers = layers;
  net.model_dim = model_dim;
  net.attention_heads = attention_heads;
  net.ffn_dim = ffn_dim;
  net.max_seq_len = max_seq_len;
  net.vocab_size = vocab_size;
  net.encoder_update_period = encoder_update_period;
  net.action_head_lstm = action_head_lstm;
  return net;
}

replay::BufferConfig TrainConfig::Buffer() const {
  replay::BufferConfig buf;
  buf.capacity = replay_buffer_size;
  buf.alpha = priority_exponent;
  buf.beta = priority_weight;
  buf.max_trajectory_length = max_trajectory_length;
  buf.burn_in_frames = burn_in_frames;
  buf.priority_eta = priority_eta;
  return buf;
}

AdamConfig TrainConfig::Adam() const {
  AdamConfig adam;
  adam.lr = lr;
  adam.eps = eps;
  adam.beta1 = adam_beta1;
  adam.beta2 = adam_beta2;
  return adam;
}

}  // namespace train
}  // namespace r3d2
