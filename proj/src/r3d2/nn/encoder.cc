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

#include "r3d2/nn/encoder.h"

#include <cmath>

#include "r3d2/util.h"

namespace r3d2 {
namespace nn {

namespace {

constexpr double kLnEps = 1e-5;

// y = gamma .* xhat + beta, xhat = (x - mean) * rstd, row-wise.
template <typename T>
void LayerNorm(const Mat<T>& x, const Mat<T>& gamma, const Mat<T>& beta,
               Mat<T>* xhat, Vec<T>* rstd, Mat<T>* y) {
  const Eigen::Index rows = x.rows(), d = x.cols();
  xhat->resize(rows, d);
  rstd->resize(rows);
  y->resize(rows, d);
  for (Eigen::Index i = 0; i < rows; ++i) {
    T mean = x.row(i).mean();
    T var = (x.row(i).array() - mean).square().mean();
    T r = T(1) / std::sqrt(var + T(kLnEps));
    (*rstd)(i) = r;
    xhat->row(i) = (x.row(i).array() - mean) * r;
    y->row(i) = xhat->row(i).cwiseProduct(gamma.row(0)) + beta.row(0);
  }
}

// dx for row-wise layer norm, using only xhat and rstd.
template <typename T>
void LayerNormBackward(const Mat<T>& dy, const Mat<T>& xhat,
                       const Vec<T>& rstd, const Mat<T>& gamma,
                       Mat<T>* dgamma, Mat<T>* dbeta, Mat<T>* dx) {
  const Eigen::Index rows = dy.rows(), d = dy.cols();
  dx->resize(rows, d);
  for (Eigen::Index i = 0; i < rows; ++i) {
    Eigen::Array<T, 1, Eigen::Dynamic> dxhat =
        dy.row(i).cwiseProduct(gamma.row(0)).array();
    T m1 = dxhat.mean();
    T m2 = (dxhat * xhat.row(i).array()).mean();
    dx->row(i) =
        ((dxhat - m1 - xhat.row(i).array() * m2) * rstd(i)).matrix();
    dgamma->row(0) += dy.row(i).cwiseProduct(xhat.row(i));
    dbeta->row(0) += dy.row(i);
  }
}

}  // namespace

template <typename T>
void EncodeTokens(const EncoderParams<T>& params, const NetConfig& config,
                  const std::vector<int>& ids, EncoderCache<T>* cache) {
  const int len = static_cast<int>(ids.size());
  if (len == 0) throw ProtocolError("cannot encode an empty sequence");
  if (len > config.max_seq_len) {
    throw TruncationError("sequence length " + std::to_string(len) +
                          " exceeds max_seq_len " +
                          std::to_string(config.max_seq_len));
  }
  const int d = config.model_dim;
  const int heads = config.attention_heads;
  const int dh = d / heads;
  const T scale = T(1) / std::sqrt(static_cast<T>(dh));

  cache->ids = ids;
  cache->embedded.resize(len, d);
  for (int i = 0; i < len; ++i) {
    R3D2_CHECK(ids[i] >= 0 && ids[i] < config.vocab_size,
               "token id out of vocab range");
    cache->embedded.row(i) =
        params.token_embed.row(ids[i]) + params.pos_embed.row(i);
  }

  cache->layers.resize(config.layers);
  const Mat<T>* x = &cache->embedded;
  for (int l = 0; l < config.layers; ++l) {
    auto& lp = params.layers[l];
    auto& lc = cache->layers[l];
    lc.input = *x;
    lc.q.noalias() = lc.input * lp.wq;
    lc.q.rowwise() += lp.bq.row(0);
    lc.k.noalias() = lc.input * lp.wk;
    lc.k.rowwise() += lp.bk.row(0);
    lc.v.noalias() = lc.input * lp.wv;
    lc.v.rowwise() += lp.bv.row(0);

    lc.probs.resize(heads);
    lc.concat.resize(len, d);
    for (int h = 0; h < heads; ++h) {
      auto qh = lc.q.middleCols(h * dh, dh);
      auto kh = lc.k.middleCols(h * dh, dh);
      auto vh = lc.v.middleCols(h * dh, dh);
      Mat<T> scores = (qh * kh.transpose()) * scale;
      Mat<T>& p = lc.probs[h];
      p.resize(len, len);
      for (int i = 0; i < len; ++i) {
        T mx = scores.row(i).maxCoeff();
        p.row(i) = (scores.row(i).array() - mx).exp();
        p.row(i) /= p.row(i).sum();
      }
      lc.concat.middleCols(h * dh, dh).noalias() = p * vh;
    }
    lc.attn_out.noalias() = lc.concat * lp.wo;
    lc.attn_out.rowwise() += lp.bo.row(0);

    Mat<T> resid1 = lc.input + lc.attn_out;
    LayerNorm(resid1, lp.ln1_gamma, lp.ln1_beta, &lc.xhat1, &lc.rstd1, &lc.x1);

    lc.ffn_pre.noalias() = lc.x1 * lp.w1;
    lc.ffn_pre.rowwise() += lp.b1.row(0);
    lc.ffn_act = lc.ffn_pre.unaryExpr([](T v) { return Gelu(v); });
    Mat<T> ffn_out = lc.ffn_act * lp.w2;
    ffn_out.rowwise() += lp.b2.row(0);

    Mat<T> resid2 = lc.x1 + ffn_out;
    LayerNorm(resid2, lp.ln2_gamma, lp.ln2_beta, &lc.xhat2, &lc.rstd2, &lc.x2);
    x = &lc.x2;
  }

  cache->pooled = x->colwise().mean().transpose();
}

template <typename T>
void EncodeTokensBackward(const EncoderParams<T>& params,
                          const NetConfig& config,
                          const EncoderCache<T>& cache, const Vec<T>& dpooled,
                          EncoderParams<T>* grads) {
  const int len = static_cast<int>(cache.ids.size());
  const int d = config.model_dim;
  const int heads = config.attention_heads;
  const int dh = d / heads;
  const T scale = T(1) / std::sqrt(static_cast<T>(dh));

  // d(mean-pool): every live row receives dpooled / L.
  Mat<T> dx = (Vec<T>::Ones(len) / static_cast<T>(len)) * dpooled.transpose();

  for (int l = config.layers - 1; l >= 0; --l) {
    auto& lp = params.layers[l];
    auto& lg = grads->layers[l];
    auto& lc = cache.layers[l];

    Mat<T> dresid2;
    LayerNormBackward(dx, lc.xhat2, lc.rstd2, lp.ln2_gamma, &lg.ln2_gamma,
                      &lg.ln2_beta, &dresid2);

    // FFN: resid2 = x1 + gelu(x1 w1 + b1) w2 + b2
    Mat<T> dffn_out = dresid2;
    lg.w2.noalias() += lc.ffn_act.transpose() * dffn_out;
    lg.b2.row(0) += dffn_out.colwise().sum();
    Mat<T> dffn_act = dffn_out * lp.w2.transpose();
    Mat<T> dffn_pre = dffn_act.cwiseProduct(
        lc.ffn_pre.unaryExpr([](T v) { return GeluGrad(v); }));
    lg.w1.noalias() += lc.x1.transpose() * dffn_pre;
    lg.b1.row(0) += dffn_pre.colwise().sum();
    Mat<T> dx1 = dresid2 + dffn_pre * lp.w1.transpose();

    Mat<T> dresid1;
    LayerNormBackward(dx1, lc.xhat1, lc.rstd1, lp.ln1_gamma, &lg.ln1_gamma,
                      &lg.ln1_beta, &dresid1);

    // Attention: resid1 = input + (concat wo + bo)
    Mat<T> dattn = dresid1;
    lg.wo.noalias() += lc.concat.transpose() * dattn;
    lg.bo.row(0) += dattn.colwise().sum();
    Mat<T> dconcat = dattn * lp.wo.transpose();

    Mat<T> dq = Mat<T>::Zero(len, d);
    Mat<T> dk = Mat<T>::Zero(len, d);
    Mat<T> dv = Mat<T>::Zero(len, d);
    for (int h = 0; h < heads; ++h) {
      auto qh = lc.q.middleCols(h * dh, dh);
      auto kh = lc.k.middleCols(h * dh, dh);
      auto vh = lc.v.middleCols(h * dh, dh);
      const Mat<T>& p = lc.probs[h];
      Mat<T> dctx = dconcat.middleCols(h * dh, dh);
      Mat<T> dp = dctx * vh.transpose();
      dv.middleCols(h * dh, dh).noalias() = p.transpose() * dctx;
      // softmax rows backward
      Mat<T> ds(len, len);
      for (int i = 0; i < len; ++i) {
        T dot = dp.row(i).cwiseProduct(p.row(i)).sum();
        ds.row(i) = (p.row(i).array() * (dp.row(i).array() - dot)).matrix();
      }
      dq.middleCols(h * dh, dh).noalias() = ds * kh * scale;
      dk.middleCols(h * dh, dh).noalias() = ds.transpose() * qh * scale;
    }

    lg.wq.noalias() += lc.input.transpose() * dq;
    lg.bq.row(0) += dq.colwise().sum();
    lg.wk.noalias() += lc.input.transpose() * dk;
    lg.bk.row(0) += dk.colwise().sum();
    lg.wv.noalias() += lc.input.transpose() * dv;
    lg.bv.row(0) += dv.colwise().sum();

    dx = dresid1 + dq * lp.wq.transpose() + dk * lp.wk.transpose() +
         dv * lp.wv.transpose();
  }

  for (int i = 0; i < len; ++i) {
    grads->token_embed.row(cache.ids[i]) += dx.row(i);
    grads->pos_embed.row(i) += dx.row(i);
  }
}

template void EncodeTokens(const EncoderParams<float>&, const NetConfig&,
                           const std::vector<int>&, EncoderCache<float>*);
template void EncodeTokens(const EncoderParams<double>&, const NetConfig&,
                           const std::vector<int>&, EncoderCache<double>*);
template void EncodeTokensBackward(const EncoderParams<float>&,
                                   const NetConfig&,
                                   const EncoderCache<float>&,
                                   const Vec<float>&, EncoderParams<float>*);
template void EncodeTokensBackward(const EncoderParams<double>&,
                                   const NetConfig&,
                                   const EncoderCache<double>&,
                                   const Vec<double>&, EncoderParams<double>*);

}  // namespace nn
}  // namespace r3d2
