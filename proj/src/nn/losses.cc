// src/nn/losses.cc

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

#include "artic/nn/losses.h"

#include "artic/error.h"

namespace artic {

namespace {

torch::Tensor Aggregate(const std::vector<torch::Tensor> &per_sub,
                        const std::string &aggregation) {
  if (per_sub.empty()) Fail(ErrorCode::kShapeMismatch, "loss: no sub-discriminators");
  torch::Tensor s = torch::stack(per_sub).sum();
  if (aggregation == "mean") return s / static_cast<double>(per_sub.size());
  if (aggregation == "sum") return s;
  Fail(ErrorCode::kInvalidArgument, "loss: unknown aggregation '" + aggregation + "'");
}

void CheckSameShape(const torch::Tensor &a, const torch::Tensor &b, const char *what) {
  if (!a.sizes().equals(b.sizes()))
    Fail(ErrorCode::kShapeMismatch, std::string(what) + ": shapes differ");
}

}  // namespace

torch::Tensor ReconLoss(const torch::Tensor &predicted, const torch::Tensor &target,
                        const torch::Tensor &valid) {
  CheckSameShape(predicted, target, "recon loss");
  const torch::Tensor sq = (predicted - target).square();
  if (!valid.defined()) return sq.mean();
  if (predicted.dim() != 3 || valid.dim() != 2 || valid.size(0) != predicted.size(0) ||
      valid.size(1) != predicted.size(1))
    Fail(ErrorCode::kShapeMismatch, "recon loss: valid mask must be [B, T]");
  const torch::Tensor w = valid.to(sq.dtype()).unsqueeze(-1);
  return (sq * w).sum() / (w.sum() * predicted.size(2)).clamp_min(1.0);
}

torch::Tensor AdvDLoss(const std::vector<torch::Tensor> &real,
                       const std::vector<torch::Tensor> &fake,
                       const std::string &aggregation) {
  if (real.size() != fake.size())
    Fail(ErrorCode::kShapeMismatch, "adv_d: sub-discriminator counts differ");
  std::vector<torch::Tensor> per_sub;
  for (size_t i = 0; i < real.size(); ++i)
    per_sub.push_back((real[i] - 1.0).square().mean() + fake[i].square().mean());
  return Aggregate(per_sub, aggregation);
}

torch::Tensor AdvGLoss(const std::vector<torch::Tensor> &fake,
                       const std::string &aggregation) {
  std::vector<torch::Tensor> per_sub;
  for (const torch::Tensor &f : fake) per_sub.push_back((f - 1.0).square().mean());
  return Aggregate(per_sub, aggregation);
}

torch::Tensor FeatureMatchingLoss(const std::vector<std::vector<torch::Tensor>> &real,
                                  const std::vector<std::vector<torch::Tensor>> &fake,
                                  const std::string &aggregation) {
  if (real.size() != fake.size())
    Fail(ErrorCode::kShapeMismatch, "fm: sub-discriminator counts differ");
  std::vector<torch::Tensor> per_sub;
  for (size_t i = 0; i < real.size(); ++i) {
    if (real[i].size() != fake[i].size() || real[i].empty())
      Fail(ErrorCode::kShapeMismatch, "fm: layer counts differ");
    torch::Tensor s;
    for (size_t l = 0; l < real[i].size(); ++l) {
      CheckSameShape(real[i][l], fake[i][l], "fm");
      torch::Tensor d = (real[i][l].detach() - fake[i][l]).abs().mean();
      s = s.defined() ? s + d : d;
    }
    per_sub.push_back(s);
  }
  return Aggregate(per_sub, aggregation);
}

LossBundle Compose(double recon, double adv_g, double adv_d, double fm,
                   const LossConfig &w) {
  LossBundle b;
  b.recon = recon;
  b.adv_g = adv_g;
  b.adv_d = adv_d;
  b.fm = fm;
  b.L_I = w.w_adv_g * adv_g + w.w_recon * recon + w.w_fm * fm;
  b.L_D = w.w_adv_d * adv_d;
  b.L_total = b.L_I + b.L_D;
  return b;
}

}  // namespace artic
