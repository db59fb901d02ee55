// src/nn/mdpd.cc

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

#include "artic/nn/mdpd.h"

#include "artic/error.h"
#include "artic/nn/masking.h"

namespace artic {

std::vector<int64_t> EmbeddingRows(int n_sensors, int axes_per_sensor) {
  std::vector<int64_t> rows;
  for (int s = 1; s <= n_sensors; ++s) rows.push_back(s * (axes_per_sensor + 1) - 1);
  return rows;
}

std::vector<int64_t> TraceRows(int n_sensors, int axes_per_sensor) {
  std::vector<int64_t> rows;
  for (int s = 0; s < n_sensors; ++s)
    for (int a = 0; a < axes_per_sensor; ++a)
      rows.push_back(s * (axes_per_sensor + 1) + a);
  return rows;
}

torch::Tensor InsertChannelEmbeddings(const torch::Tensor &ema,
                                      const torch::Tensor &split,
                                      const torch::Tensor &end, int axes_per_sensor) {
  if (ema.dim() != 3 || axes_per_sensor < 1 || ema.size(1) % axes_per_sensor != 0)
    Fail(ErrorCode::kShapeMismatch, "mdpd: expected [B, C, T] with whole sensor groups");
  const int64_t b = ema.size(0), frames = ema.size(2);
  const int64_t n_sensors = ema.size(1) / axes_per_sensor;
  const int64_t t_pd = end.numel();
  if (split.dim() != 2 || split.size(0) != n_sensors - 1 || split.size(1) != t_pd)
    Fail(ErrorCode::kShapeMismatch,
         "mdpd: split embeddings must be [n_sensors - 1, t_pd]");

  const int64_t reps = (frames + t_pd - 1) / t_pd;
  auto tile = [&](const torch::Tensor &e) {
    return e.reshape({1, 1, t_pd})
        .repeat({1, 1, reps})
        .narrow(2, 0, frames)
        .expand({b, 1, frames})
        .to(ema.dtype());
  };
  std::vector<torch::Tensor> rows;
  for (int64_t s = 0; s < n_sensors; ++s) {
    rows.push_back(ema.narrow(1, s * axes_per_sensor, axes_per_sensor));
    rows.push_back(tile(s + 1 < n_sensors ? split[s] : end));
  }
  return torch::cat(rows, 1);
}

torch::Tensor RemoveChannelEmbeddings(const torch::Tensor &augmented, int n_sensors,
                                      int axes_per_sensor) {
  if (augmented.dim() != 3 || augmented.size(1) != n_sensors * (axes_per_sensor + 1))
    Fail(ErrorCode::kShapeMismatch, "mdpd: augmented signal has the wrong channel count");
  const auto idx = torch::tensor(TraceRows(n_sensors, axes_per_sensor), torch::kLong)
                       .to(augmented.device());
  return augmented.index_select(1, idx);
}

int64_t PaddedFrames(int64_t frames, int64_t t_pd) {
  return (frames + t_pd - 1) / t_pd * t_pd;
}

int64_t TokenCount(int64_t channels, int64_t frames, int64_t t_pd) {
  return channels * (PaddedFrames(frames, t_pd) / t_pd);
}

torch::Tensor ReshapeForDuration(const torch::Tensor &x, int64_t t_pd) {
  if (x.dim() != 3 || t_pd < 1)
    Fail(ErrorCode::kShapeMismatch, "mdpd: expected [B, C, T]");
  const int64_t pad = PaddedFrames(x.size(2), t_pd) - x.size(2);
  const torch::Tensor padded = pad ? torch::constant_pad_nd(x, {0, pad}) : x;
  return padded.reshape({x.size(0), -1, t_pd});
}

torch::Tensor UnreshapeForDuration(const torch::Tensor &tokens, int64_t channels,
                                   int64_t t_pd) {
  if (tokens.dim() != 3 || tokens.size(2) != t_pd || tokens.size(1) % channels != 0)
    Fail(ErrorCode::kShapeMismatch,
         "mdpd: token tensor does not match the channel count");
  return tokens.reshape({tokens.size(0), channels, -1});
}

SubDiscriminatorImpl::SubDiscriminatorImpl(const MdpdConfig &config, int t_pd)
    : config_(config), t_pd_(t_pd) {
  const bool native = config.token_mode == "native";
  width_ = native ? t_pd : config.model_dim;
  split_ =
      register_parameter("split_embedding", torch::randn({config.n_sensors - 1, t_pd}));
  end_ = register_parameter("end_embedding", torch::randn({t_pd}));
  mask_token_ = register_parameter("mask_token", torch::empty({width_}));
  torch::nn::init::uniform_(mask_token_);
  if (!native) embed_ = register_module("embed", torch::nn::Linear(t_pd, width_));
  blocks_ = register_module("blocks", torch::nn::ModuleList());
  for (int i = 0; i < config.n_layers_per_sub; ++i) {
    BlockSpec s;
    s.dim = width_;
    s.heads = native ? 1 : config.attention_heads;
    s.ffn_expansion = config.ffn_expansion;
    s.conv.kernel = config.conv_kernel;
    s.dropout = config.dropout;
    blocks_->push_back(ConformerBlock(s));
  }
  score_ = register_module("score", torch::nn::Linear(width_, 1));
}

torch::Tensor SubDiscriminatorImpl::Tokens(const torch::Tensor &ema) {
  if (ema.dim() != 3 || ema.size(2) != config_.channels())
    Fail(ErrorCode::kShapeMismatch,
         "mdpd: expected [B, T, " + std::to_string(config_.channels()) + "] EMA");
  const torch::Tensor aug =
      InsertChannelEmbeddings(ema.transpose(1, 2), split_, end_, config_.axes_per_sensor);
  return ReshapeForDuration(aug, t_pd_);
}

torch::Tensor SubDiscriminatorImpl::Embed(const torch::Tensor &tokens) {
  return embed_ ? embed_->forward(tokens) : tokens;
}

SubDiscriminatorOutput SubDiscriminatorImpl::forward(const torch::Tensor &ema,
                                                     uint64_t mask_seed) {
  torch::Tensor h = Embed(Tokens(ema));
  if (is_training() && config_.mask_fraction > 0.0) {
    const auto plans = DrawMaskPlans(h.size(0), h.size(1), config_.mask_fraction,
                                     config_.mask_span_tokens, mask_seed);
    h = ApplyTimeMask(h, plans, mask_token_);
  }
  SubDiscriminatorOutput out;
  out.features.push_back(h);
  for (const auto &block : *blocks_) {
    h = block->as<ConformerBlock>()->forward(h);
    out.features.push_back(h);
  }
  out.scores = score_->forward(h).squeeze(-1);
  return out;
}

MdpdModelImpl::MdpdModelImpl(const MdpdConfig &config) : config_(config) {
  Validate(config);
  for (size_t i = 0; i < config.durations_ms.size(); ++i) {
    const int t_pd = config.duration_frames(i);
    subs_.push_back(register_module("sub" + std::to_string(config.durations_ms[i]) + "ms",
                                    SubDiscriminator(config, t_pd)));
  }
}

std::vector<SubDiscriminatorOutput> MdpdModelImpl::forward(const torch::Tensor &ema,
                                                           uint64_t mask_seed) {
  std::vector<SubDiscriminatorOutput> out;
  for (size_t i = 0; i < subs_.size(); ++i)
    out.push_back(subs_[i]->forward(ema, MixSeed(mask_seed, i)));
  return out;
}

}  // namespace artic
