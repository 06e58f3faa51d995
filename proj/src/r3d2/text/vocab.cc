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

#include "r3d2/text/vocab.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include "r3d2/util.h"

namespace r3d2 {
namespace text {

Vocab::Vocab(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (int i = 0; i < static_cast<int>(tokens_.size()); ++i) {
    auto [it, inserted] = ids_.emplace(tokens_[i], i);
    if (!inserted && i > kUnkId) {
      throw ConfigError("duplicate vocab token: " + tokens_[i]);
    }
  }
}

Vocab Vocab::Default() {
  std::vector<std::string> tokens = {
      "<pad>", "<unk>",
      ".", ",", ":",
      "0", "1", "2", "3", "4", "5", "6", "7", "8", "9",
      "clue", "tokens", "available",
      "life", "remaining",
      "fireworks", "display",
      "knowledge", "about", "own", "hand",
      "player", "unknown", "x",
      "discards", "last", "action",
      "play", "discard", "reveal", "rank",
      "red", "yellow", "green", "white", "blue",
  };
  return Vocab(std::move(tokens));
}

Vocab Vocab::FromLines(const std::vector<std::string>& tokens) {
  return Vocab(tokens);
}

Vocab Vocab::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open vocab file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) tokens.push_back(line);
  return Vocab(std::move(tokens));
}

std::string Vocab::ToText() const {
  std::ostringstream out;
  for (const auto& t : tokens_) out << t << "\n";
  return out.str();
}

void Vocab::Save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write vocab file: " + path);
  out << ToText();
}

uint64_t Vocab::Hash() const { return Fnv1a64(ToText()); }

std::vector<std::string> SplitWords(const std::string& text) {
  std::vector<std::string> words;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      words.push_back(current);
      current.clear();
    }
  };
  for (char raw : text) {
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '.' || c == ',' || c == ':') {
      flush();
      words.push_back(std::string(1, c));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      flush();
      words.push_back(std::string(1, c));
    } else {
      current.push_back(c);
    }
  }
  flush();
  return words;
}

TokenSequence Tokenize(const std::string& text, const Vocab& vocab) {
  TokenSequence seq;
  seq.source_text = text;
  for (const auto& w : SplitWords(text)) {
    seq.ids.push_back(vocab.id(w));
  }
  return seq;
}

PaddedBatch PadBatch(const std::vector<TokenSequence>& seqs, int max_len) {
  for (const auto& s : seqs) {
    if (s.size() > max_len) {
      throw TruncationError("sequence of length " + std::to_string(s.size()) +
                            " exceeds max_len " + std::to_string(max_len));
    }
  }
  PaddedBatch batch;
  int n = static_cast<int>(seqs.size());
  batch.ids = Eigen::MatrixXi::Constant(n, n == 0 ? 0 : max_len, kPadId);
  batch.mask = Eigen::MatrixXi::Zero(n, n == 0 ? 0 : max_len);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < seqs[i].size(); ++j) {
      batch.ids(i, j) = seqs[i].ids[j];
      batch.mask(i, j) = 1;
    }
  }
  return batch;
}

}  // namespace text
}  // namespace r3d2
