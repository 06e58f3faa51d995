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

#include "r3d2/nn/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>

#include "r3d2/util.h"

namespace r3d2 {
namespace nn {

namespace {

constexpr char kMagic[8] = {'R', '3', 'D', '2', 'C', 'K', 'P', 'T'};
constexpr uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian");

template <typename T>
void WriteScalar(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T ReadScalar(std::istream& in) {
  T value;
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw LoadError("truncated checkpoint");
  return value;
}

void WriteString(std::ostream& out, const std::string& s) {
  WriteScalar<uint32_t>(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string ReadString(std::istream& in) {
  uint32_t len = ReadScalar<uint32_t>(in);
  std::string s(len, '\0');
  in.read(s.data(), len);
  if (!in) throw LoadError("truncated checkpoint string");
  return s;
}

void WriteConfig(std::ostream& out, const NetConfig& cfg) {
  WriteScalar<int32_t>(out, cfg.layers);
  WriteScalar<int32_t>(out, cfg.model_dim);
  WriteScalar<int32_t>(out, cfg.attention_heads);
  WriteScalar<int32_t>(out, cfg.ffn_dim);
  WriteScalar<int32_t>(out, cfg.max_seq_len);
  WriteScalar<int32_t>(out, cfg.vocab_size);
  WriteScalar<int32_t>(out, cfg.encoder_update_period);
  WriteScalar<uint8_t>(out, cfg.action_head_lstm ? 1 : 0);
}

NetConfig ReadConfig(std::istream& in) {
  NetConfig cfg;
  cfg.layers = ReadScalar<int32_t>(in);
  cfg.model_dim = ReadScalar<int32_t>(in);
  cfg.attention_heads = ReadScalar<int32_t>(in);
  cfg.ffn_dim = ReadScalar<int32_t>(in);
  cfg.max_seq_len = ReadScalar<int32_t>(in);
  cfg.vocab_size = ReadScalar<int32_t>(in);
  cfg.encoder_update_period = ReadScalar<int32_t>(in);
  cfg.action_head_lstm = ReadScalar<uint8_t>(in) != 0;
  return cfg;
}

}  // namespace

void SaveCheckpoint(const std::string& path, const QNetParams<float>& params,
                    const TextOptionsMeta& text_options,
                    const std::string& vocab_text, int64_t train_step) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError("cannot write checkpoint: " + path);
  out.write(kMagic, sizeof(kMagic));
  WriteScalar<uint32_t>(out, kVersion);
  WriteConfig(out, params.config);
  WriteScalar<uint8_t>(out, text_options.include_player_knowledge ? 1 : 0);
  WriteScalar<uint8_t>(out, text_options.include_last_action ? 1 : 0);
  WriteScalar<uint8_t>(out, text_options.include_discards ? 1 : 0);
  WriteScalar<uint64_t>(out, Fnv1a64(vocab_text));
  WriteString(out, vocab_text);
  WriteScalar<int64_t>(out, train_step);

  auto arrays = NamedArrays(params);
  WriteScalar<uint32_t>(out, static_cast<uint32_t>(arrays.size()));
  for (const auto& [name, mat] : arrays) {
    WriteString(out, name);
    WriteScalar<uint32_t>(out, static_cast<uint32_t>(mat->rows()));
    WriteScalar<uint32_t>(out, static_cast<uint32_t>(mat->cols()));
    out.write(reinterpret_cast<const char*>(mat->data()),
              static_cast<std::streamsize>(mat->size() * sizeof(float)));
  }
  if (!out) throw LoadError("write failure on checkpoint: " + path);
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open checkpoint: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw LoadError("not a checkpoint file: " + path);
  }
  uint32_t version = ReadScalar<uint32_t>(in);
  if (version != kVersion) {
    throw LoadError("unsupported checkpoint version " +
                    std::to_string(version));
  }

  Checkpoint ckpt;
  NetConfig cfg = ReadConfig(in);
  ckpt.text_options.include_player_knowledge = ReadScalar<uint8_t>(in) != 0;
  ckpt.text_options.include_last_action = ReadScalar<uint8_t>(in) != 0;
  ckpt.text_options.include_discards = ReadScalar<uint8_t>(in) != 0;
  ckpt.vocab_hash = ReadScalar<uint64_t>(in);
  ckpt.vocab_text = ReadString(in);
  if (Fnv1a64(ckpt.vocab_text) != ckpt.vocab_hash) {
    throw LoadError("vocab hash mismatch in " + path);
  }
  ckpt.train_step = ReadScalar<int64_t>(in);

  // Allocate the parameter tree for this config, then fill by name.
  ckpt.params = QNetParams<float>::Init(cfg, 0);
  auto arrays = NamedArrays(ckpt.params);
  uint32_t count = ReadScalar<uint32_t>(in);
  if (count != arrays.size()) {
    throw LoadError("array count mismatch: file has " + std::to_string(count) +
                    ", config expects " + std::to_string(arrays.size()));
  }
  for (uint32_t i = 0; i < count; ++i) {
    std::string name = ReadString(in);
    uint32_t rows = ReadScalar<uint32_t>(in);
    uint32_t cols = ReadScalar<uint32_t>(in);
    if (name != arrays[i].first) {
      throw LoadError("unexpected array '" + name + "', expected '" +
                      arrays[i].first + "'");
    }
    Mat<float>* mat = arrays[i].second;
    if (static_cast<uint32_t>(mat->rows()) != rows ||
        static_cast<uint32_t>(mat->cols()) != cols) {
      throw LoadError("shape mismatch for '" + name + "': file " +
                      std::to_string(rows) + "x" + std::to_string(cols) +
                      ", config " + std::to_string(mat->rows()) + "x" +
                      std::to_string(mat->cols()));
    }
    in.read(reinterpret_cast<char*>(mat->data()),
            static_cast<std::streamsize>(mat->size() * sizeof(float)));
    if (!in) throw LoadError("truncated data for array '" + name + "'");
  }
  return ckpt;
}

QNetParams<float> ImportParams(const NetConfig& config,
                               const std::string& path) {
  Checkpoint ckpt = LoadCheckpoint(path);
  const NetConfig& file = ckpt.params.config;
  auto require = [&](bool ok, const std::string& field) {
    if (!ok) {
      throw LoadError("import config mismatch on " + field + " in " + path);
    }
  };
  require(file.layers == config.layers, "layers");
  require(file.model_dim == config.model_dim, "model_dim");
  require(file.attention_heads == config.attention_heads, "attention_heads");
  require(file.ffn_dim == config.ffn_dim, "ffn_dim");
  require(file.max_seq_len == config.max_seq_len, "max_seq_len");
  require(file.vocab_size == config.vocab_size, "vocab_size");
  require(file.action_head_lstm == config.action_head_lstm,
          "action_head_lstm");
  QNetParams<float> params = std::move(ckpt.params);
  params.config = config;  // schedule fields may differ from the file's
  return params;
}

}  // namespace nn
}  // namespace r3d2
