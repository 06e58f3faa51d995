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

#include "r3d2/nn/lstm.h"

#include <cmath>

namespace r3d2 {
namespace nn {

template <typename T>
LstmState<T> LstmStep(const LstmParams<T>& params, const Vec<T>& x,
                      const LstmState<T>& prev, LstmCache<T>* cache) {
  const Eigen::Index d = x.size();
  Vec<T> z = params.w_input * x + params.w_hidden * prev.h + params.bias;
  Vec<T> i = z.segment(0, d).unaryExpr([](T v) { return Sigmoid(v); });
  Vec<T> f = z.segment(d, d).unaryExpr([](T v) { return Sigmoid(v); });
  Vec<T> g = z.segment(2 * d, d).unaryExpr([](T v) { return std::tanh(v); });
  Vec<T> o = z.segment(3 * d, d).unaryExpr([](T v) { return Sigmoid(v); });

  LstmState<T> next;
  next.c = f.cwiseProduct(prev.c) + i.cwiseProduct(g);
  Vec<T> tanh_c = next.c.unaryExpr([](T v) { return std::tanh(v); });
  next.h = o.cwiseProduct(tanh_c);

  if (cache != nullptr) {
    cache->x = x;
    cache->h_prev = prev.h;
    cache->c_prev = prev.c;
    cache->i = std::move(i);
    cache->f = std::move(f);
    cache->g = std::move(g);
    cache->o = std::move(o);
    cache->tanh_c = std::move(tanh_c);
  }
  return next;
}

template <typename T>
void LstmStepBackward(const LstmParams<T>& params, const LstmCache<T>& cache,
                      const Vec<T>& dh, const Vec<T>& dc,
                      LstmParams<T>* grads, Vec<T>* dx, Vec<T>* dh_prev,
                      Vec<T>* dc_prev) {
  const Eigen::Index d = cache.x.size();
  Vec<T> do_ = dh.cwiseProduct(cache.tanh_c);
  Vec<T> dc_total =
      dc + dh.cwiseProduct(cache.o)
               .cwiseProduct((Vec<T>::Ones(d) -
                              cache.tanh_c.cwiseProduct(cache.tanh_c)));

  Vec<T> di = dc_total.cwiseProduct(cache.g);
  Vec<T> dg = dc_total.cwiseProduct(cache.i);
  Vec<T> df = dc_total.cwiseProduct(cache.c_prev);
  *dc_prev = dc_total.cwiseProduct(cache.f);

  Vec<T> dz(4 * d);
  dz.segment(0, d) =
      di.cwiseProduct(cache.i).cwiseProduct(Vec<T>::Ones(d) - cache.i);
  dz.segment(d, d) =
      df.cwiseProduct(cache.f).cwiseProduct(Vec<T>::Ones(d) - cache.f);
  dz.segment(2 * d, d) =
      dg.cwiseProduct(Vec<T>::Ones(d) - cache.g.cwiseProduct(cache.g));
  dz.segment(3 * d, d) =
      do_.cwiseProduct(cache.o).cwiseProduct(Vec<T>::Ones(d) - cache.o);

  grads->w_input.noalias() += dz * cache.x.transpose();
  grads->w_hidden.noalias() += dz * cache.h_prev.transpose();
  grads->bias.col(0) += dz;

  dx->noalias() = params.w_input.transpose() * dz;
  dh_prev->noalias() = params.w_hidden.transpose() * dz;
}

template LstmState<float> LstmStep(const LstmParams<float>&, const Vec<float>&,
                                   const LstmState<float>&, LstmCache<float>*);
template LstmState<double> LstmStep(const LstmParams<double>&,
                                    const Vec<double>&,
                                    const LstmState<double>&,
                                    LstmCache<double>*);
template void LstmStepBackward(const LstmParams<float>&,
                               const LstmCache<float>&, const Vec<float>&,
                               const Vec<float>&, LstmParams<float>*,
                               Vec<float>*, Vec<float>*, Vec<float>*);
template void LstmStepBackward(const LstmParams<double>&,
                               const LstmCache<double>&, const Vec<double>&,
                               const Vec<double>&, LstmParams<double>*,
                               Vec<double>*, Vec<double>*, Vec<double>*);

}  // namespace nn
}  // namespace r3d2
