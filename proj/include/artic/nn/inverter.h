// include/artic/nn/inverter.h

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

#ifndef ARTIC_NN_INVERTER_H_
#define ARTIC_NN_INVERTER_H_

#include <torch/torch.h>

#include "artic/config.h"
#include "artic/nn/conformer.h"

namespace artic {

// Feature projection, span masking (training only), the block trunk selected
// by config.trunk, and a linear head to the EMA channels.
class InverterModelImpl : public torch::nn::Module {
 public:
  explicit InverterModelImpl(const InverterConfig &config);

  // [B, T, input_dim] -> [B, T, out_channels]. In training mode the projected
  // features are masked with spans drawn from |mask_seed|.
  torch::Tensor forward(const torch::Tensor &features, uint64_t mask_seed = 0);

  // [..., input_dim] -> [..., model_dim]; kDimMismatch on a wrong width.
  torch::Tensor Project(const torch::Tensor &features);
  torch::Tensor Trunk(const torch::Tensor &hidden);
  torch::Tensor Head(const torch::Tensor &hidden);

  const InverterConfig &config() const { return config_; }
  torch::nn::Linear projection() const { return projection_; }
  torch::nn::Linear head() const { return head_; }
  const torch::Tensor &mask_token() const { return mask_token_; }

 private:
  InverterConfig config_;
  torch::nn::Linear projection_{nullptr}, head_{nullptr};
  torch::Tensor mask_token_;
  torch::nn::ModuleList blocks_;
};
TORCH_MODULE(InverterModel);

// Block layout for a trunk: one spec per block in order.
std::vector<BlockSpec> TrunkLayout(const InverterConfig &config);

}  // namespace artic

#endif  // ARTIC_NN_INVERTER_H_
