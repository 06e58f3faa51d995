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

#ifndef R3D2_NN_QNET_H_
#define R3D2_NN_QNET_H_

#include <string>
#include <unordered_map>
#include <vector>

#include "r3d2/nn/encoder.h"
#include "r3d2/nn/episode.h"
#include "r3d2/nn/lstm.h"
#include "r3d2/nn/params.h"

namespace r3d2 {
namespace nn {

enum class Head { kObservation, kAction };

// Cache of action-text embeddings under one parameter snapshot. The action
// lexicon is tiny and closed, so actors reuse embeddings across steps; the
// cache must be dropped whenever the snapshot changes.
template <typename T>
class ActionEmbedCache {
 public:
  const Vec<T>* Find(const std::vector<int>& ids) const;
  void Insert(const std::vector<int>& ids, Vec<T> pooled);
  void Clear() { cache_.clear(); }

 private:
  std::unordered_map<std::string, Vec<T>> cache_;
};

// Per-step forward activations retained for the exact backward pass.
template <typename T>
struct StepForward {
  EncoderCache<T> obs_enc;
  LstmCache<T> obs_lstm_cache;
  Vec<T> h;                    // observation recurrent output
  Vec<T> value_pre;            // value-head hidden pre-activation
  T value;
  std::vector<int> cand_key;   // index into EpisodeForward::distinct
  std::vector<Vec<T>> actvec;  // action vector fused with h
  std::vector<LstmCache<T>> act_lstm_caches;  // only with action_head_lstm
  std::vector<Vec<T>> fused;
  std::vector<Vec<T>> adv_pre;
  std::vector<T> adv;
  std::vector<T> q;
};

template <typename T>
struct EpisodeForward {
  std::vector<StepForward<T>> steps;           // live steps only
  std::vector<EncoderCache<T>> distinct;       // unique candidate encodings
  std::unordered_map<std::string, int> index;  // ids key -> distinct slot

  std::vector<std::vector<T>> Q() const {
    std::vector<std::vector<T>> q;
    q.reserve(steps.size());
    for (const auto& s : steps) q.push_back(s.q);
    return q;
  }
};

// The dual-head value network: twin text encoders, observation-side
// recurrence, elementwise fusion and a dueling value/advantage combination
// over a dynamic candidate set. Parameters are borrowed; a QNet is cheap to
// construct over any snapshot and is reentrant over const parameters.
template <typename T>
class QNet {
 public:
  explicit QNet(const QNetParams<T>& params) : params_(params) {
    params.config.Validate();
  }

  const NetConfig& config() const { return params_.config; }

  struct Recurrent {
    LstmState<T> obs;
    LstmState<T> act;
  };
  Recurrent InitialRecurrent() const;

  // Masked text embedding. The mask marks live tokens (1) before padding;
  // pads never contribute. Throws ProtocolError on an all-pad input.
  Vec<T> EncodeText(Head head, const std::vector<int>& ids,
                    const std::vector<int>& mask) const;
  Vec<T> EncodeText(Head head, const std::vector<int>& ids) const;

  struct QValueResult {
    std::vector<T> q;                 // one per candidate, input order
    LstmState<T> obs_state;           // advanced once
    std::vector<LstmState<T>> act_probes;  // per candidate, with act LSTM
  };

  // One timestep of the value computation over already-encoded embeddings:
  // Q(tau, a_k) = V(tau) + A(tau, a_k) - mean_j A(tau, a_j).
  QValueResult QValues(const Vec<T>& obs_embedding, const Recurrent& state,
                       const std::vector<Vec<T>>& cand_embeddings) const;

  // Acting: encode observation and candidates, advance the recurrence.
  QValueResult Act(const std::vector<int>& obs_ids,
                   const std::vector<std::vector<int>>& cand_ids,
                   const Recurrent& state,
                   ActionEmbedCache<T>* embed_cache = nullptr) const;

  static Recurrent Advanced(const Recurrent& state, const QValueResult& step,
                            int chosen);

  // Unrolls the recurrence from zero state over the episode's live steps.
  // keep_caches retains everything BackwardEpisode needs.
  EpisodeForward<T> ForwardEpisode(const EpisodeTokens& episode,
                                   bool keep_caches) const;

  // Reverse-mode gradients of sum_t <dq[t], q[t]> into *grads (accumulated).
  void BackwardEpisode(const EpisodeTokens& episode,
                       const EpisodeForward<T>& forward,
                       const std::vector<std::vector<T>>& dq,
                       QNetParams<T>* grads) const;

 private:
  T Mlp(const MlpParams<T>& mlp, const Vec<T>& input, Vec<T>* pre) const;
  void MlpBackward(const MlpParams<T>& mlp, const Vec<T>& input,
                   const Vec<T>& pre, T dout, MlpParams<T>* grads,
                   Vec<T>* dinput) const;

  const QNetParams<T>& params_;
};

// Zeroes both text-encoder heads' gradients on learner steps where
// encoder_update_period withholds the update (step is 0-based; the encoder
// trains on steps where step % period == 0).
template <typename T>
void MaybeZeroEncoderGrads(QNetParams<T>* grads, int64_t step);

}  // namespace nn
}  // namespace r3d2

#endif  // R3D2_NN_QNET_H_
