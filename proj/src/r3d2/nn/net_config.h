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

#ifndef R3D2_NN_NET_CONFIG_H_
#define R3D2_NN_NET_CONFIG_H_

#include "r3d2/util.h"

namespace r3d2 {
namespace nn {

// Shape of the twin text-encoder heads and the recurrent/dueling stack.
// Defaults follow a two-layer compact-BERT profile.
struct NetConfig {
  int layers = 2;
  int model_dim = 128;
  int attention_heads = 2;
  int ffn_dim = 512;
  int max_seq_len = 512;
  int vocab_size = 0;  // filled from the vocab in use
  // Learner steps between encoder-head updates; 1 = update every step.
  int encoder_update_period = 1;
  // Thread recurrent state through the action head as well (off by default;
  // the committed state follows the chosen action).
  bool action_head_lstm = false;

  void Validate() const {
    if (layers < 1) throw ConfigError("encoder layers must be >= 1");
    if (model_dim < 1 || ffn_dim < 1) throw ConfigError("dims must be >= 1");
    if (attention_heads < 1 || model_dim % attention_heads != 0) {
      throw ConfigError("model_dim must be divisible by attention_heads");
    }
    if (max_seq_len < 1) throw ConfigError("max_seq_len must be >= 1");
    if (vocab_size < 2) throw ConfigError("vocab_size must be >= 2");
    if (encoder_update_period < 1) {
      throw ConfigError("encoder_update_period must be >= 1");
    }
  }

  bool operator==(const NetConfig&) const = default;
};

}  // namespace nn
}  // namespace r3d2

#endif  // R3D2_NN_NET_CONFIG_H_
