// src/nn/inverter.cc

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

#include "artic/nn/inverter.h"

#include "artic/error.h"
#include "artic/nn/masking.h"

namespace artic {

std::vector<BlockSpec> TrunkLayout(const InverterConfig &c) {
  Validate(c);
  BlockKind kind = BlockKind::kConformer;
  if (c.trunk == "transformer") kind = BlockKind::kTransformer;
  if (c.trunk == "cnn") kind = BlockKind::kConvOnly;
  if (c.trunk == "mlp") kind = BlockKind::kMlp;

  std::vector<BlockSpec> layout;
  for (int i = 0; i < c.total_blocks(); ++i) {
    BlockSpec s;
    s.kind = kind;
    s.dim = c.model_dim;
    s.heads = c.attention_heads;
    s.ffn_expansion = c.ffn_expansion;
    s.dropout = c.dropout;
    s.mlp_ffn = c.mlp_ffn_per_block;
    s.conv.kernel = c.conv_kernel;
    s.conv.pnp = i < c.n_pnp_blocks;
    s.conv.snake_factors = c.snake_factors;
    s.conv.topology = c.pnp_topology;
    layout.push_back(s);
  }
  return layout;
}

InverterModelImpl::InverterModelImpl(const InverterConfig &config) : config_(config) {
  const std::vector<BlockSpec> layout = TrunkLayout(config);
  projection_ = register_module("projection",
                                torch::nn::Linear(config.input_dim, config.model_dim));
  mask_token_ = register_parameter("mask_token", torch::empty({config.model_dim}));
  torch::nn::init::uniform_(mask_token_);
  blocks_ = register_module("blocks", torch::nn::ModuleList());
  for (const BlockSpec &s : layout) blocks_->push_back(ConformerBlock(s));
  head_ =
      register_module("head", torch::nn::Linear(config.model_dim, config.out_channels));
}

torch::Tensor InverterModelImpl::Project(const torch::Tensor &features) {
  if (features.dim() < 1 || features.size(-1) != config_.input_dim)
    Fail(ErrorCode::kDimMismatch,
         "inverter: features have " +
             std::to_string(features.dim() ? features.size(-1) : 0) +
             " dims, projection expects " + std::to_string(config_.input_dim));
  return projection_->forward(features);
}

torch::Tensor InverterModelImpl::Trunk(const torch::Tensor &hidden) {
  torch::Tensor h = hidden;
  for (const auto &block : *blocks_) h = block->as<ConformerBlock>()->forward(h);
  return h;
}

torch::Tensor InverterModelImpl::Head(const torch::Tensor &hidden) {
  return head_->forward(hidden);
}

torch::Tensor InverterModelImpl::forward(const torch::Tensor &features,
                                         uint64_t mask_seed) {
  if (features.dim() != 3)
    Fail(ErrorCode::kShapeMismatch, "inverter: expected [B, T, input_dim] features");
  torch::Tensor h = Project(features);
  if (is_training() && config_.mask_fraction > 0.0) {
    const auto plans = DrawMaskPlans(h.size(0), h.size(1), config_.mask_fraction,
                                     config_.mask_span_frames, mask_seed);
    h = ApplyTimeMask(h, plans, mask_token_);
  }
  return Head(Trunk(h));
}

}  // namespace artic
