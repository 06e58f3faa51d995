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

#ifndef R3D2_NN_LSTM_H_
#define R3D2_NN_LSTM_H_

#include "r3d2/nn/params.h"
#include "r3d2/nn/types.h"

namespace r3d2 {
namespace nn {

// Zero-initialized at episode start.
template <typename T>
struct LstmState {
  Vec<T> h, c;

  static LstmState Zero(int dim) {
    return LstmState{Vec<T>::Zero(dim), Vec<T>::Zero(dim)};
  }
};

template <typename T>
struct LstmCache {
  Vec<T> x, h_prev, c_prev;
  Vec<T> i, f, g, o, tanh_c;
};

template <typename T>
LstmState<T> LstmStep(const LstmParams<T>& params, const Vec<T>& x,
                      const LstmState<T>& prev, LstmCache<T>* cache);

// dh/dc are the accumulated output gradients at this step; dx, dh_prev and
// dc_prev receive the upstream gradients (overwritten, not accumulated).
template <typename T>
void LstmStepBackward(const LstmParams<T>& params, const LstmCache<T>& cache,
                      const Vec<T>& dh, const Vec<T>& dc,
                      LstmParams<T>* grads, Vec<T>* dx, Vec<T>* dh_prev,
                      Vec<T>* dc_prev);

}  // namespace nn
}  // namespace r3d2

#endif  // R3D2_NN_LSTM_H_
