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

#ifndef R3D2_NN_ENCODER_H_
#define R3D2_NN_ENCODER_H_

#include <vector>

#include "r3d2/nn/params.h"
#include "r3d2/nn/types.h"

namespace r3d2 {
namespace nn {

// Activations kept from one encoder pass, enough to run the exact backward
// pass. Sequences run at their live length; padding never enters the stack.
template <typename T>
struct EncoderLayerCache {
  Mat<T> input;              // L x d
  Mat<T> q, k, v;            // L x d
  std::vector<Mat<T>> probs; // per head, L x L softmax rows
  Mat<T> concat;             // L x d attention context before the out proj
  Mat<T> attn_out;           // L x d
  Mat<T> xhat1, x1;          // L x d
  Vec<T> rstd1;              // L
  Mat<T> ffn_pre, ffn_act;   // L x f
  Mat<T> xhat2, x2;          // L x d
  Vec<T> rstd2;              // L
};

template <typename T>
struct EncoderCache {
  std::vector<int> ids;
  Mat<T> embedded;  // L x d (token + position)
  std::vector<EncoderLayerCache<T>> layers;
  Vec<T> pooled;    // d, masked mean over final-layer token states
};

// Post-norm transformer encoder over the live ids; pooled output is the mean
// of final-layer states. Throws TruncationError if ids exceed max_seq_len and
// ProtocolError on an empty sequence.
template <typename T>
void EncodeTokens(const EncoderParams<T>& params, const NetConfig& config,
                  const std::vector<int>& ids, EncoderCache<T>* cache);

// Accumulates parameter gradients for d(pooled); activations come from the
// cache of the matching forward call.
template <typename T>
void EncodeTokensBackward(const EncoderParams<T>& params,
                          const NetConfig& config,
                          const EncoderCache<T>& cache, const Vec<T>& dpooled,
                          EncoderParams<T>* grads);

}  // namespace nn
}  // namespace r3d2

#endif  // R3D2_NN_ENCODER_H_
