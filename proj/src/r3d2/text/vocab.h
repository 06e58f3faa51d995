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

#ifndef R3D2_TEXT_VOCAB_H_
#define R3D2_TEXT_VOCAB_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "Eigen/Core"

namespace r3d2 {
namespace text {

inline constexpr int kPadId = 0;
inline constexpr int kUnkId = 1;

struct TokenSequence {
  std::vector<int> ids;
  std::string source_text;  // retained for debugging

  int size() const { return static_cast<int>(ids.size()); }
};

// Closed vocabulary over the observation/action template grammar. Immutable
// after construction; ids are stable (line number in the serialized form).
class Vocab {
 public:
  // Enumerates the full template lexicon for every 2-5 player config:
  // keywords, color names, digits and punctuation.
  static Vocab Default();

  static Vocab FromLines(const std::vector<std::string>& tokens);
  static Vocab FromFile(const std::string& path);

  int id(const std::string& token) const {
    auto it = ids_.find(token);
    return it == ids_.end() ? kUnkId : it->second;
  }
  const std::string& token(int id) const { return tokens_.at(id); }
  int size() const { return static_cast<int>(tokens_.size()); }

  // One token per line, line number = id. Part of every checkpoint.
  std::string ToText() const;
  void Save(const std::string& path) const;
  uint64_t Hash() const;

 private:
  explicit Vocab(std::vector<std::string> tokens);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

// Lowercases, splits on whitespace, detaches '.', ',' and ':' and splits
// digit runs into single-character tokens. Pure and deterministic.
std::vector<std::string> SplitWords(const std::string& text);

TokenSequence Tokenize(const std::string& text, const Vocab& vocab);

struct PaddedBatch {
  Eigen::MatrixXi ids;   // rows = sequences, right-padded with kPadId
  Eigen::MatrixXi mask;  // 1 on live tokens, 0 on pads
};

// Throws TruncationError if any sequence exceeds max_len.
PaddedBatch PadBatch(const std::vector<TokenSequence>& seqs, int max_len);

}  // namespace text
}  // namespace r3d2

#endif  // R3D2_TEXT_VOCAB_H_
