// include/artic/nn/losses.h

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

#ifndef ARTIC_NN_LOSSES_H_
#define ARTIC_NN_LOSSES_H_

#include <torch/torch.h>

#include <string>
#include <vector>

#include "artic/config.h"

namespace artic {

// Mean squared error over all elements. With |valid| ([B, T], 1 for real
// frames), the mean runs over valid frames only.
torch::Tensor ReconLoss(const torch::Tensor &predicted, const torch::Tensor &target,
                        const torch::Tensor &valid = {});

// Least-squares objectives over per-token scores, one tensor per
// sub-discriminator. Per sub the token mean is taken; across subs
// |aggregation| is "mean" or "sum".
torch::Tensor AdvDLoss(const std::vector<torch::Tensor> &real,
                       const std::vector<torch::Tensor> &fake,
                       const std::string &aggregation = "mean");
torch::Tensor AdvGLoss(const std::vector<torch::Tensor> &fake,
                       const std::string &aggregation = "mean");

// Per sub: sum over layers of mean |real - fake|, with the real branch
// detached; then aggregated across subs.
torch::Tensor FeatureMatchingLoss(const std::vector<std::vector<torch::Tensor>> &real,
                                  const std::vector<std::vector<torch::Tensor>> &fake,
                                  const std::string &aggregation = "mean");

struct LossBundle {
  double recon = 0.0;
  double adv_g = 0.0;
  double adv_d = 0.0;
  double fm = 0.0;
  double L_I = 0.0;
  double L_D = 0.0;
  double L_total = 0.0;
};

LossBundle Compose(double recon, double adv_g, double adv_d, double fm,
                   const LossConfig &weights);

}  // namespace artic

#endif  // ARTIC_NN_LOSSES_H_
