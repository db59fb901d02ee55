// include/artic/nn/optim.h

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

#ifndef ARTIC_NN_OPTIM_H_
#define ARTIC_NN_OPTIM_H_

#include <torch/torch.h>

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace artic {

struct AdamWOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

// Decoupled-weight-decay Adam with the update rule of torch::optim::AdamW,
// but with state that can be written to and read from a checkpoint.
class AdamW {
 public:
  AdamW(std::vector<torch::Tensor> params, const AdamWOptions &options);

  void Step();
  void ZeroGrad();

  double lr() const { return options_.lr; }
  void set_lr(double lr) { options_.lr = lr; }
  const AdamWOptions &options() const { return options_; }

  // Per-parameter step counts go in the header; moments as named tensors
  // "<prefix>.<i>.exp_avg" / ".exp_avg_sq" for initialized slots.
  nlohmann::json StateHeader() const;
  void AppendStateTensors(const std::string &prefix,
                          std::vector<std::pair<std::string, torch::Tensor>> *out) const;
  void LoadState(const nlohmann::json &header, const std::string &prefix,
                 const std::map<std::string, torch::Tensor> &tensors);

 private:
  struct Slot {
    int64_t step = 0;
    torch::Tensor exp_avg, exp_avg_sq;
  };
  std::vector<torch::Tensor> params_;
  std::vector<Slot> slots_;
  AdamWOptions options_;
};

// Cosine annealing with warm restarts, by epoch: cycles of length t0,
// t0 * t_mult, t0 * t_mult^2, ... each annealing base_lr down toward min_lr.
double CosineWarmRestartLr(int epoch, double base_lr, int t0, int t_mult, double min_lr);

}  // namespace artic

#endif  // ARTIC_NN_OPTIM_H_
