// include/artic/nn/mdpd.h

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

#ifndef ARTIC_NN_MDPD_H_
#define ARTIC_NN_MDPD_H_

#include <torch/torch.h>

#include <vector>

#include "artic/config.h"
#include "artic/nn/conformer.h"

namespace artic {

// Output rows of the inserted embeddings: a split row after each of the first
// n_sensors - 1 sensor groups, then the end row last.
std::vector<int64_t> EmbeddingRows(int n_sensors, int axes_per_sensor);
// Output rows of the original traces, in input order.
std::vector<int64_t> TraceRows(int n_sensors, int axes_per_sensor);

// ema: [B, C, T]; split: [n_sensors - 1, t_pd]; end: [t_pd]. Each embedding is
// tiled along time (value at frame t is e[t mod t_pd]). -> [B, C + n_sensors, T].
torch::Tensor InsertChannelEmbeddings(const torch::Tensor &ema,
                                      const torch::Tensor &split,
                                      const torch::Tensor &end, int axes_per_sensor);
torch::Tensor RemoveChannelEmbeddings(const torch::Tensor &augmented, int n_sensors,
                                      int axes_per_sensor);

int64_t PaddedFrames(int64_t frames, int64_t t_pd);
int64_t TokenCount(int64_t channels, int64_t frames, int64_t t_pd);

// [B, C_D, T] -> [B, C_D * ceil(T / t_pd), t_pd]: zero-pad time, then cut each
// row into consecutive segments; all segments of row 0 come first.
torch::Tensor ReshapeForDuration(const torch::Tensor &x, int64_t t_pd);
// Inverse of ReshapeForDuration up to the padding: -> [B, C_D, T_pad].
torch::Tensor UnreshapeForDuration(const torch::Tensor &tokens, int64_t channels,
                                   int64_t t_pd);

struct SubDiscriminatorOutput {
  torch::Tensor scores;                 // [B, L]
  std::vector<torch::Tensor> features;  // embed output, then each block: [B, L, dim]
};

class SubDiscriminatorImpl : public torch::nn::Module {
 public:
  SubDiscriminatorImpl(const MdpdConfig &config, int t_pd);

  // ema: [B, T, C]. In training mode embedded tokens are span-masked with
  // plans drawn from |mask_seed|.
  SubDiscriminatorOutput forward(const torch::Tensor &ema, uint64_t mask_seed = 0);

  // ema [B, T, C] -> tokens [B, L, t_pd].
  torch::Tensor Tokens(const torch::Tensor &ema);
  // tokens -> [B, L, width]; identity in native mode.
  torch::Tensor Embed(const torch::Tensor &tokens);

  int t_pd() const { return t_pd_; }
  int width() const { return width_; }
  const torch::Tensor &split_embedding() const { return split_; }
  const torch::Tensor &end_embedding() const { return end_; }

 private:
  MdpdConfig config_;
  int t_pd_, width_;
  torch::Tensor split_, end_, mask_token_;
  torch::nn::Linear embed_{nullptr}, score_{nullptr};
  torch::nn::ModuleList blocks_;
};
TORCH_MODULE(SubDiscriminator);

class MdpdModelImpl : public torch::nn::Module {
 public:
  explicit MdpdModelImpl(const MdpdConfig &config);

  // One output per configured duration, in config order. All sub-discriminators
  // share |mask_seed| through a per-index derivation, so equal seeds give equal
  // masks for real and generated inputs.
  std::vector<SubDiscriminatorOutput> forward(const torch::Tensor &ema,
                                              uint64_t mask_seed = 0);

  const MdpdConfig &config() const { return config_; }
  size_t size() const { return subs_.size(); }
  SubDiscriminator sub(size_t i) const { return subs_.at(i); }

 private:
  MdpdConfig config_;
  std::vector<SubDiscriminator> subs_;
};
TORCH_MODULE(MdpdModel);

}  // namespace artic

#endif  // ARTIC_NN_MDPD_H_
