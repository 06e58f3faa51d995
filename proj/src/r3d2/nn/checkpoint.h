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

#ifndef R3D2_NN_CHECKPOINT_H_
#define R3D2_NN_CHECKPOINT_H_

#include <cstdint>
#include <string>

#include "r3d2/nn/params.h"

namespace r3d2 {
namespace nn {

// Rendering flags a policy was trained with; stored so evaluation feeds the
// network the same text it saw during training.
struct TextOptionsMeta {
  bool include_player_knowledge = true;
  bool include_last_action = true;
  bool include_discards = true;
};

struct Checkpoint {
  QNetParams<float> params;
  TextOptionsMeta text_options;
  uint64_t vocab_hash = 0;
  std::string vocab_text;  // embedded for forward compatibility
  int64_t train_step = 0;
};

// Binary container, little-endian, f32 arrays in column-major order with
// shape headers; array names mirror the parameter tree.
void SaveCheckpoint(const std::string& path, const QNetParams<float>& params,
                    const TextOptionsMeta& text_options,
                    const std::string& vocab_text, int64_t train_step);

Checkpoint LoadCheckpoint(const std::string& path);

// Import into a fixed config: every shape must match the config's layout.
// Throws LoadError naming the first offending array or field.
QNetParams<float> ImportParams(const NetConfig& config,
                               const std::string& path);

}  // namespace nn
}  // namespace r3d2

#endif  // R3D2_NN_CHECKPOINT_H_
