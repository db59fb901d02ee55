// include/artic/nn/conformer.h

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

#ifndef ARTIC_NN_CONFORMER_H_
#define ARTIC_NN_CONFORMER_H_

#include <torch/torch.h>

#include <string>
#include <vector>

namespace artic {

// Depthwise convolution wrapped with fixed-frequency Snake activations.
//   chain         y = x + D4(S4(D3(S3(D2(S2(D1(S1(x))))))))
//   parallel_sum  y = x + sum_i Di(Si(x))
// with Si = snake(., a_i) and Di a per-channel convolution. [B, C, T] in and out.
class DepthwisePnpConvImpl : public torch::nn::Module {
 public:
  DepthwisePnpConvImpl(int channels, int kernel, std::vector<double> factors,
                       const std::string &topology);
  torch::Tensor forward(const torch::Tensor &x);

  const std::vector<double> &factors() const { return factors_; }

 private:
  int channels_;
  bool chain_;
  std::vector<double> factors_;
  std::vector<torch::nn::Conv1d> convs_;
};
TORCH_MODULE(DepthwisePnpConv);

// Half of the macaron feed-forward pair: LN, expand, Swish, project. Returns
// the sublayer output; the caller adds the (scaled) residual.
class FeedForwardImpl : public torch::nn::Module {
 public:
  FeedForwardImpl(int dim, int expansion, double dropout);
  torch::Tensor forward(const torch::Tensor &x);

 private:
  torch::nn::LayerNorm norm_{nullptr};
  torch::nn::Linear fc1_{nullptr}, fc2_{nullptr};
  torch::nn::Dropout drop_{nullptr};
};
TORCH_MODULE(FeedForward);

// Sinusoidal encodings for relative offsets T-1, T-2, ..., -(T-1); [2T-1, dim].
torch::Tensor RelativePositionEncoding(int64_t frames, int64_t dim,
                                       const torch::TensorOptions &options);

// Multi-head self-attention with relative positional encoding and content /
// position biases. [B, T, D] -> [B, T, D], including the pre-norm.
class RelPositionAttentionImpl : public torch::nn::Module {
 public:
  RelPositionAttentionImpl(int dim, int heads, double dropout);
  torch::Tensor forward(const torch::Tensor &x);

 private:
  int dim_, heads_;
  torch::nn::LayerNorm norm_{nullptr};
  torch::nn::Linear q_{nullptr}, k_{nullptr}, v_{nullptr}, out_{nullptr}, pos_{nullptr};
  torch::Tensor bias_u_, bias_v_;
  torch::nn::Dropout attn_drop_{nullptr}, drop_{nullptr};
};
TORCH_MODULE(RelPositionAttention);

struct ConvSpec {
  int kernel = 5;
  bool pnp = false;
  std::vector<double> snake_factors;
  std::string topology = "chain";
};

// LN, pointwise expand, GLU, depthwise (plain or PNP), LN, Swish, pointwise.
class ConvModuleImpl : public torch::nn::Module {
 public:
  ConvModuleImpl(int dim, const ConvSpec &spec, double dropout);
  torch::Tensor forward(const torch::Tensor &x);

 private:
  torch::nn::LayerNorm norm_{nullptr}, mid_norm_{nullptr};
  torch::nn::Linear pw1_{nullptr}, pw2_{nullptr};
  torch::nn::Conv1d depthwise_{nullptr};
  DepthwisePnpConv pnp_{nullptr};
  torch::nn::Dropout drop_{nullptr};
};
TORCH_MODULE(ConvModule);

enum class BlockKind {
  kConformer,    // FFN/2, MHSA, conv, FFN/2
  kTransformer,  // FFN/2, MHSA, FFN/2
  kConvOnly,     // FFN/2, conv, conv, FFN/2
  kMlp,          // n residual FFNs
};

struct BlockSpec {
  BlockKind kind = BlockKind::kConformer;
  int dim = 256;
  int heads = 4;
  int ffn_expansion = 4;
  ConvSpec conv;
  double dropout = 0.1;
  int mlp_ffn = 3;
};

// [B, T, D] -> [B, T, D], final LayerNorm included.
class ConformerBlockImpl : public torch::nn::Module {
 public:
  explicit ConformerBlockImpl(const BlockSpec &spec);
  torch::Tensor forward(const torch::Tensor &x);

 private:
  BlockSpec spec_;
  FeedForward ffn1_{nullptr}, ffn2_{nullptr};
  RelPositionAttention attn_{nullptr};
  ConvModule conv_a_{nullptr}, conv_{nullptr};
  std::vector<FeedForward> mlp_;
  torch::nn::LayerNorm norm_out_{nullptr};
};
TORCH_MODULE(ConformerBlock);

int64_t CountParameters(const torch::nn::Module &module);

}  // namespace artic

#endif  // ARTIC_NN_CONFORMER_H_
