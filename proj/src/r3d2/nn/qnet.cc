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

#include "r3d2/nn/qnet.h"

#include <cmath>
#include <numeric>

#include "r3d2/util.h"

namespace r3d2 {
namespace nn {

namespace {

std::string IdsKey(const std::vector<int>& ids) {
  return std::string(reinterpret_cast<const char*>(ids.data()),
                     ids.size() * sizeof(int));
}

template <typename T>
bool AllFinite(const Mat<T>& m) {
  return m.allFinite();
}

}  // namespace

template <typename T>
const Vec<T>* ActionEmbedCache<T>::Find(const std::vector<int>& ids) const {
  auto it = cache_.find(IdsKey(ids));
  return it == cache_.end() ? nullptr : &it->second;
}

template <typename T>
void ActionEmbedCache<T>::Insert(const std::vector<int>& ids, Vec<T> pooled) {
  cache_.emplace(IdsKey(ids), std::move(pooled));
}

template <typename T>
typename QNet<T>::Recurrent QNet<T>::InitialRecurrent() const {
  Recurrent r;
  r.obs = LstmState<T>::Zero(config().model_dim);
  r.act = LstmState<T>::Zero(config().model_dim);
  return r;
}

template <typename T>
Vec<T> QNet<T>::EncodeText(Head head, const std::vector<int>& ids,
                           const std::vector<int>& mask) const {
  if (ids.size() != mask.size()) {
    throw ProtocolError("ids/mask length mismatch");
  }
  int live = 0;
  while (live < static_cast<int>(mask.size()) && mask[live] == 1) ++live;
  for (int i = live; i < static_cast<int>(mask.size()); ++i) {
    if (mask[i] != 0) throw ProtocolError("mask has interior padding");
  }
  if (live == 0) throw ProtocolError("cannot encode an all-pad sequence");
  return EncodeText(head, std::vector<int>(ids.begin(), ids.begin() + live));
}

template <typename T>
Vec<T> QNet<T>::EncodeText(Head head, const std::vector<int>& ids) const {
  const EncoderParams<T>& enc = head == Head::kObservation
                                    ? params_.obs_encoder
                                    : params_.act_encoder;
  EncoderCache<T> cache;
  EncodeTokens(enc, config(), ids, &cache);
  return cache.pooled;
}

template <typename T>
T QNet<T>::Mlp(const MlpParams<T>& mlp, const Vec<T>& input,
               Vec<T>* pre) const {
  *pre = mlp.w1 * input + mlp.b1;
  Vec<T> act = pre->unaryExpr([](T v) { return Gelu(v); });
  return (mlp.w2 * act)(0, 0) + mlp.b2(0, 0);
}

template <typename T>
void QNet<T>::MlpBackward(const MlpParams<T>& mlp, const Vec<T>& input,
                          const Vec<T>& pre, T dout, MlpParams<T>* grads,
                          Vec<T>* dinput) const {
  Vec<T> act = pre.unaryExpr([](T v) { return Gelu(v); });
  grads->w2.noalias() += dout * act.transpose();
  grads->b2(0, 0) += dout;
  Vec<T> dact = mlp.w2.transpose() * dout;
  Vec<T> dpre =
      dact.cwiseProduct(pre.unaryExpr([](T v) { return GeluGrad(v); }));
  grads->w1.noalias() += dpre * input.transpose();
  grads->b1.col(0) += dpre;
  dinput->noalias() = mlp.w1.transpose() * dpre;
}

template <typename T>
typename QNet<T>::QValueResult QNet<T>::QValues(
    const Vec<T>& obs_embedding, const Recurrent& state,
    const std::vector<Vec<T>>& cand_embeddings) const {
  if (cand_embeddings.empty()) {
    throw ProtocolError("candidate set must be nonempty");
  }
  QValueResult out;
  out.obs_state = LstmStep(params_.obs_lstm, obs_embedding, state.obs,
                           static_cast<LstmCache<T>*>(nullptr));
  const Vec<T>& h = out.obs_state.h;

  Vec<T> value_pre;
  T value = Mlp(params_.value_head, h, &value_pre);

  const int k = static_cast<int>(cand_embeddings.size());
  std::vector<T> adv(k);
  for (int i = 0; i < k; ++i) {
    Vec<T> actvec;
    if (config().action_head_lstm) {
      LstmState<T> probe = LstmStep(params_.act_lstm, cand_embeddings[i],
                                    state.act,
                                    static_cast<LstmCache<T>*>(nullptr));
      actvec = probe.h;
      out.act_probes.push_back(std::move(probe));
    } else {
      actvec = cand_embeddings[i];
    }
    Vec<T> fused = h.cwiseProduct(actvec);
    Vec<T> adv_pre;
    adv[i] = Mlp(params_.advantage_head, fused, &adv_pre);
  }
  T mean_adv = std::accumulate(adv.begin(), adv.end(), T(0)) / T(k);
  out.q.resize(k);
  for (int i = 0; i < k; ++i) out.q[i] = value + adv[i] - mean_adv;
  return out;
}

template <typename T>
typename QNet<T>::QValueResult QNet<T>::Act(
    const std::vector<int>& obs_ids,
    const std::vector<std::vector<int>>& cand_ids, const Recurrent& state,
    ActionEmbedCache<T>* embed_cache) const {
  Vec<T> obs_embed = EncodeText(Head::kObservation, obs_ids);
  std::vector<Vec<T>> cand_embeds;
  cand_embeds.reserve(cand_ids.size());
  for (const auto& ids : cand_ids) {
    if (embed_cache != nullptr) {
      if (const Vec<T>* hit = embed_cache->Find(ids)) {
        cand_embeds.push_back(*hit);
        continue;
      }
    }
    Vec<T> pooled = EncodeText(Head::kAction, ids);
    if (embed_cache != nullptr) embed_cache->Insert(ids, pooled);
    cand_embeds.push_back(std::move(pooled));
  }
  return QValues(obs_embed, state, cand_embeds);
}

template <typename T>
typename QNet<T>::Recurrent QNet<T>::Advanced(const Recurrent& state,
                                              const QValueResult& step,
                                              int chosen) {
  Recurrent next;
  next.obs = step.obs_state;
  next.act = step.act_probes.empty() ? state.act : step.act_probes[chosen];
  return next;
}

template <typename T>
EpisodeForward<T> QNet<T>::ForwardEpisode(const EpisodeTokens& episode,
                                          bool keep_caches) const {
  episode.Validate();
  const int live = episode.LiveLength();
  const int d = config().model_dim;

  EpisodeForward<T> fwd;
  fwd.steps.resize(live);
  LstmState<T> obs_state = LstmState<T>::Zero(d);
  LstmState<T> act_state = LstmState<T>::Zero(d);

  for (int t = 0; t < live; ++t) {
    StepForward<T>& step = fwd.steps[t];
    EncodeTokens(params_.obs_encoder, config(), episode.obs[t], &step.obs_enc);
    obs_state = LstmStep(params_.obs_lstm, step.obs_enc.pooled, obs_state,
                         &step.obs_lstm_cache);
    step.h = obs_state.h;
    step.value = Mlp(params_.value_head, step.h, &step.value_pre);

    const int k = static_cast<int>(episode.cands[t].size());
    step.cand_key.resize(k);
    step.actvec.resize(k);
    step.fused.resize(k);
    step.adv_pre.resize(k);
    step.adv.resize(k);
    step.q.resize(k);
    if (config().action_head_lstm) step.act_lstm_caches.resize(k);

    LstmState<T> committed = act_state;
    for (int i = 0; i < k; ++i) {
      const std::vector<int>& ids = episode.cands[t][i];
      std::string key = IdsKey(ids);
      auto it = fwd.index.find(key);
      int slot;
      if (it == fwd.index.end()) {
        slot = static_cast<int>(fwd.distinct.size());
        fwd.index.emplace(std::move(key), slot);
        fwd.distinct.emplace_back();
        EncodeTokens(params_.act_encoder, config(), ids, &fwd.distinct[slot]);
      } else {
        slot = it->second;
      }
      step.cand_key[i] = slot;
      const Vec<T>& pooled = fwd.distinct[slot].pooled;
      if (config().action_head_lstm) {
        LstmState<T> probe = LstmStep(params_.act_lstm, pooled, act_state,
                                      &step.act_lstm_caches[i]);
        step.actvec[i] = probe.h;
        if (i == episode.chosen[t]) committed = probe;
      } else {
        step.actvec[i] = pooled;
      }
      step.fused[i] = step.h.cwiseProduct(step.actvec[i]);
      step.adv[i] = Mlp(params_.advantage_head, step.fused[i],
                        &step.adv_pre[i]);
    }
    act_state = committed;

    T mean_adv = std::accumulate(step.adv.begin(), step.adv.end(), T(0)) /
                 static_cast<T>(k);
    for (int i = 0; i < k; ++i) {
      step.q[i] = step.value + step.adv[i] - mean_adv;
      if (!std::isfinite(static_cast<double>(step.q[i]))) {
        std::string where = !AllFinite(step.obs_enc.embedded)
                                ? "observation embedding"
                                : "q head";
        for (size_t l = 0; l < step.obs_enc.layers.size(); ++l) {
          if (!AllFinite(step.obs_enc.layers[l].x2)) {
            where = "observation encoder layer " + std::to_string(l);
            break;
          }
        }
        throw NumericError("non-finite Q at step " + std::to_string(t) +
                           " (" + where + ")");
      }
    }
  }

  if (!keep_caches) {
    // Q values stay; drop the heavy activations.
    for (auto& step : fwd.steps) {
      step.obs_enc = EncoderCache<T>{};
      step.obs_lstm_cache = LstmCache<T>{};
      step.act_lstm_caches.clear();
      step.actvec.clear();
      step.fused.clear();
      step.adv_pre.clear();
    }
    fwd.distinct.clear();
    fwd.index.clear();
  }
  return fwd;
}

template <typename T>
void QNet<T>::BackwardEpisode(const EpisodeTokens& episode,
                              const EpisodeForward<T>& forward,
                              const std::vector<std::vector<T>>& dq,
                              QNetParams<T>* grads) const {
  const int live = static_cast<int>(forward.steps.size());
  if (static_cast<int>(dq.size()) < live) {
    throw ProtocolError("dq shorter than the live episode");
  }
  const int d = config().model_dim;

  std::vector<Vec<T>> dpooled_distinct(forward.distinct.size(),
                                       Vec<T>::Zero(d));
  Vec<T> dh_carry = Vec<T>::Zero(d);
  Vec<T> dc_carry = Vec<T>::Zero(d);
  Vec<T> dh_act_carry = Vec<T>::Zero(d);
  Vec<T> dc_act_carry = Vec<T>::Zero(d);

  for (int t = live - 1; t >= 0; --t) {
    const StepForward<T>& step = forward.steps[t];
    const int k = static_cast<int>(step.q.size());
    R3D2_CHECK(static_cast<int>(dq[t].size()) == k,
               "dq candidate count mismatch");

    T dq_sum = std::accumulate(dq[t].begin(), dq[t].end(), T(0));
    Vec<T> dh = dh_carry;

    // Value head: every candidate's Q carries V.
    Vec<T> dinput(d);
    MlpBackward(params_.value_head, step.h, step.value_pre, dq_sum,
                &grads->value_head, &dinput);
    dh += dinput;

    // Advantage head with mean subtraction across candidates.
    Vec<T> dh_act_prev = Vec<T>::Zero(d);
    Vec<T> dc_act_prev = Vec<T>::Zero(d);
    for (int i = 0; i < k; ++i) {
      T dadv = dq[t][i] - dq_sum / static_cast<T>(k);
      Vec<T> dfused(d);
      MlpBackward(params_.advantage_head, step.fused[i], step.adv_pre[i],
                  dadv, &grads->advantage_head, &dfused);
      dh += dfused.cwiseProduct(step.actvec[i]);
      Vec<T> dactvec = dfused.cwiseProduct(step.h);

      if (config().action_head_lstm) {
        Vec<T> dprobe_h = dactvec;
        Vec<T> dprobe_c = Vec<T>::Zero(d);
        if (i == episode.chosen[t]) {
          dprobe_h += dh_act_carry;
          dprobe_c += dc_act_carry;
        }
        Vec<T> dx(d), dhp(d), dcp(d);
        LstmStepBackward(params_.act_lstm, step.act_lstm_caches[i], dprobe_h,
                         dprobe_c, &grads->act_lstm, &dx, &dhp, &dcp);
        dpooled_distinct[step.cand_key[i]] += dx;
        dh_act_prev += dhp;
        dc_act_prev += dcp;
      } else {
        dpooled_distinct[step.cand_key[i]] += dactvec;
      }
    }
    dh_act_carry = dh_act_prev;
    dc_act_carry = dc_act_prev;

    // Observation recurrence and encoder.
    Vec<T> dx(d), dh_prev(d), dc_prev(d);
    LstmStepBackward(params_.obs_lstm, step.obs_lstm_cache, dh, dc_carry,
                     &grads->obs_lstm, &dx, &dh_prev, &dc_prev);
    dh_carry = dh_prev;
    dc_carry = dc_prev;
    EncodeTokensBackward(params_.obs_encoder, config(), step.obs_enc, dx,
                         &grads->obs_encoder);
  }

  for (size_t s = 0; s < forward.distinct.size(); ++s) {
    EncodeTokensBackward(params_.act_encoder, config(), forward.distinct[s],
                         dpooled_distinct[s], &grads->act_encoder);
  }
}

template <typename T>
void MaybeZeroEncoderGrads(QNetParams<T>* grads, int64_t step) {
  if (grads->config.encoder_update_period <= 1) return;
  if (step % grads->config.encoder_update_period == 0) return;
  for (auto& [name, mat] : NamedArrays(*grads)) {
    if (IsEncoderArray(name)) mat->setZero();
  }
}

template class ActionEmbedCache<float>;
template class ActionEmbedCache<double>;
template class QNet<float>;
template class QNet<double>;
template void MaybeZeroEncoderGrads(QNetParams<float>*, int64_t);
template void MaybeZeroEncoderGrads(QNetParams<double>*, int64_t);

}  // namespace nn
}  // namespace r3d2
