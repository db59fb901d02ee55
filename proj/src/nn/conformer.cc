// src/nn/conformer.cc

// Copyright 2026  The artic Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "artic/nn/conformer.h"

#include <cmath>

#include "artic/error.h"
#include "artic/nn/snake.h"

namespace artic {

namespace F = torch::nn::functional;

DepthwisePnpConvImpl::DepthwisePnpConvImpl(int channels, int kernel,
                                           std::vector<double> factors,
                                           const std::string &topology)
    : channels_(channels), chain_(topology == "chain"), factors_(std::move(factors)) {
  if (topology != "chain" && topology != "parallel_sum")
    Fail(ErrorCode::kInvalidArgument, "pnp: unknown topology '" + topology + "'");
  if (factors_.empty()) Fail(ErrorCode::kInvalidArgument, "pnp: no snake factors");
  for (size_t i = 0; i < factors_.size(); ++i) {
    auto conv = torch::nn::Conv1d(torch::nn::Conv1dOptions(channels, channels, kernel)
                                      .padding(kernel / 2)
                                      .groups(channels));
    convs_.push_back(register_module("dconv" + std::to_string(i), conv));
  }
}

torch::Tensor DepthwisePnpConvImpl::forward(const torch::Tensor &x) {
  if (x.dim() != 3 || x.size(1) != channels_)
    Fail(ErrorCode::kShapeMismatch,
         "pnp: expected [B, " + std::to_string(channels_) + ", T]");
  if (chain_) {
    torch::Tensor y = x;
    for (size_t i = 0; i < convs_.size(); ++i)
      y = convs_[i]->forward(Snake(y, factors_[i]));
    return x + y;
  }
  torch::Tensor y = x;
  for (size_t i = 0; i < convs_.size(); ++i)
    y = y + convs_[i]->forward(Snake(x, factors_[i]));
  return y;
}

FeedForwardImpl::FeedForwardImpl(int dim, int expansion, double dropout) {
  norm_ =
      register_module("norm", torch::nn::LayerNorm(torch::nn::LayerNormOptions({dim})));
  fc1_ = register_module("fc1", torch::nn::Linear(dim, dim * expansion));
  fc2_ = register_module("fc2", torch::nn::Linear(dim * expansion, dim));
  drop_ = register_module("drop", torch::nn::Dropout(dropout));
}

torch::Tensor FeedForwardImpl::forward(const torch::Tensor &x) {
  torch::Tensor h = drop_->forward(F::silu(fc1_->forward(norm_->forward(x))));
  return drop_->forward(fc2_->forward(h));
}

torch::Tensor RelativePositionEncoding(int64_t frames, int64_t dim,
                                       const torch::TensorOptions &options) {
  const auto dopts = torch::TensorOptions().dtype(torch::kFloat64);
  const torch::Tensor offset = torch::arange(frames - 1, -frames, -1, dopts).unsqueeze(1);
  const torch::Tensor i = torch::arange(dim, dopts);
  const torch::Tensor pair = torch::floor(i / 2) * 2;
  const torch::Tensor inv_freq = torch::exp(-std::log(10000.0) * pair / dim).unsqueeze(0);
  const torch::Tensor angle = offset * inv_freq;
  const torch::Tensor even = (torch::fmod(i, 2) == 0).unsqueeze(0);
  return torch::where(even, torch::sin(angle), torch::cos(angle)).to(options);
}

RelPositionAttentionImpl::RelPositionAttentionImpl(int dim, int heads, double dropout)
    : dim_(dim), heads_(heads) {
  if (heads < 1 || dim % heads != 0)
    Fail(ErrorCode::kInvalidArgument, "attention: heads must divide dim");
  const int dk = dim / heads;
  norm_ =
      register_module("norm", torch::nn::LayerNorm(torch::nn::LayerNormOptions({dim})));
  q_ = register_module("q", torch::nn::Linear(dim, dim));
  k_ = register_module("k", torch::nn::Linear(dim, dim));
  v_ = register_module("v", torch::nn::Linear(dim, dim));
  out_ = register_module("out", torch::nn::Linear(dim, dim));
  pos_ = register_module(
      "pos", torch::nn::Linear(torch::nn::LinearOptions(dim, dim).bias(false)));
  bias_u_ = register_parameter("bias_u", torch::zeros({heads, dk}));
  bias_v_ = register_parameter("bias_v", torch::zeros({heads, dk}));
  torch::nn::init::xavier_uniform_(bias_u_);
  torch::nn::init::xavier_uniform_(bias_v_);
  attn_drop_ = register_module("attn_drop", torch::nn::Dropout(dropout));
  drop_ = register_module("drop", torch::nn::Dropout(dropout));
}

torch::Tensor RelPositionAttentionImpl::forward(const torch::Tensor &x) {
  if (x.dim() != 3 || x.size(2) != dim_)
    Fail(ErrorCode::kShapeMismatch,
         "attention: expected [B, T, " + std::to_string(dim_) + "]");
  const int64_t b = x.size(0), t = x.size(1), dk = dim_ / heads_;
  const torch::Tensor h = norm_->forward(x);
  // [B, H, T, dk]
  const torch::Tensor q = q_->forward(h).view({b, t, heads_, dk}).transpose(1, 2);
  const torch::Tensor k = k_->forward(h).view({b, t, heads_, dk}).transpose(1, 2);
  const torch::Tensor v = v_->forward(h).view({b, t, heads_, dk}).transpose(1, 2);
  // [H, 2T-1, dk]
  const torch::Tensor p = pos_->forward(RelativePositionEncoding(t, dim_, x.options()))
                              .view({2 * t - 1, heads_, dk})
                              .transpose(0, 1);

  const torch::Tensor ac = torch::matmul(q + bias_u_.unsqueeze(1), k.transpose(-2, -1));
  const torch::Tensor bd_all =
      torch::matmul(q + bias_v_.unsqueeze(1), p.transpose(-2, -1));
  // Query i, key j sits at relative offset i - j, i.e. column T-1-i+j.
  const auto lopts = torch::TensorOptions().dtype(torch::kLong).device(x.device());
  const torch::Tensor idx = (t - 1) - torch::arange(t, lopts).unsqueeze(1) +
                            torch::arange(t, lopts).unsqueeze(0);
  const torch::Tensor bd = bd_all.gather(-1, idx.expand({b, heads_, t, t}));

  const torch::Tensor attn = attn_drop_->forward(
      torch::softmax((ac + bd) / std::sqrt(static_cast<double>(dk)), -1));
  const torch::Tensor ctx = torch::matmul(attn, v).transpose(1, 2).reshape({b, t, dim_});
  return drop_->forward(out_->forward(ctx));
}

ConvModuleImpl::ConvModuleImpl(int dim, const ConvSpec &spec, double dropout) {
  if (spec.kernel < 1 || spec.kernel % 2 == 0)
    Fail(ErrorCode::kInvalidArgument, "conv module: kernel must be odd");
  norm_ =
      register_module("norm", torch::nn::LayerNorm(torch::nn::LayerNormOptions({dim})));
  pw1_ = register_module("pw1", torch::nn::Linear(dim, 2 * dim));
  if (spec.pnp) {
    pnp_ = register_module(
        "pnp", DepthwisePnpConv(dim, spec.kernel, spec.snake_factors, spec.topology));
  } else {
    depthwise_ = register_module(
        "depthwise", torch::nn::Conv1d(torch::nn::Conv1dOptions(dim, dim, spec.kernel)
                                           .padding(spec.kernel / 2)
                                           .groups(dim)));
  }
  mid_norm_ = register_module("mid_norm",
                              torch::nn::LayerNorm(torch::nn::LayerNormOptions({dim})));
  pw2_ = register_module("pw2", torch::nn::Linear(dim, dim));
  drop_ = register_module("drop", torch::nn::Dropout(dropout));
}

torch::Tensor ConvModuleImpl::forward(const torch::Tensor &x) {
  torch::Tensor h = F::glu(pw1_->forward(norm_->forward(x)), F::GLUFuncOptions(-1));
  h = h.transpose(1, 2);
  h = pnp_ ? pnp_->forward(h) : depthwise_->forward(h);
  h = F::silu(mid_norm_->forward(h.transpose(1, 2)));
  return drop_->forward(pw2_->forward(h));
}

ConformerBlockImpl::ConformerBlockImpl(const BlockSpec &spec) : spec_(spec) {
  const int d = spec.dim;
  if (spec.kind == BlockKind::kMlp) {
    for (int i = 0; i < spec.mlp_ffn; ++i)
      mlp_.push_back(register_module("ffn" + std::to_string(i),
                                     FeedForward(d, spec.ffn_expansion, spec.dropout)));
  } else {
    ffn1_ = register_module("ffn1", FeedForward(d, spec.ffn_expansion, spec.dropout));
    if (spec.kind == BlockKind::kConvOnly)
      conv_a_ = register_module("conv_a", ConvModule(d, spec.conv, spec.dropout));
    else
      attn_ = register_module("attn", RelPositionAttention(d, spec.heads, spec.dropout));
    if (spec.kind != BlockKind::kTransformer)
      conv_ = register_module("conv", ConvModule(d, spec.conv, spec.dropout));
    ffn2_ = register_module("ffn2", FeedForward(d, spec.ffn_expansion, spec.dropout));
  }
  norm_out_ =
      register_module("norm_out", torch::nn::LayerNorm(torch::nn::LayerNormOptions({d})));
}

torch::Tensor ConformerBlockImpl::forward(const torch::Tensor &x) {
  if (x.dim() != 3 || x.size(2) != spec_.dim)
    Fail(ErrorCode::kShapeMismatch, "block: expected [B, T, " +
                                        std::to_string(spec_.dim) + "], got " +
                                        std::to_string(x.size(-1)) + " features");
  torch::Tensor h = x;
  if (spec_.kind == BlockKind::kMlp) {
    for (FeedForward &f : mlp_) h = h + f->forward(h);
    return norm_out_->forward(h);
  }
  h = h + 0.5 * ffn1_->forward(h);
  h = h + (attn_ ? attn_->forward(h) : conv_a_->forward(h));
  if (conv_) h = h + conv_->forward(h);
  h = h + 0.5 * ffn2_->forward(h);
  return norm_out_->forward(h);
}

int64_t CountParameters(const torch::nn::Module &module) {
  int64_t n = 0;
  for (const torch::Tensor &p : module.parameters()) n += p.numel();
  return n;
}

}  // namespace artic
