// src/nn/optim.cc

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

#include "artic/nn/optim.h"

#include <cmath>
#include <numbers>

#include "artic/error.h"

namespace artic {

AdamW::AdamW(std::vector<torch::Tensor> params, const AdamWOptions &options)
    : params_(std::move(params)), slots_(params_.size()), options_(options) {}

void AdamW::Step() {
  torch::NoGradGuard no_grad;
  const double b1 = options_.beta1, b2 = options_.beta2;
  for (size_t i = 0; i < params_.size(); ++i) {
    torch::Tensor &p = params_[i];
    if (!p.grad().defined()) continue;
    const torch::Tensor g = p.grad();
    Slot &s = slots_[i];
    if (!s.exp_avg.defined()) {
      s.exp_avg = torch::zeros_like(p, torch::MemoryFormat::Preserve);
      s.exp_avg_sq = torch::zeros_like(p, torch::MemoryFormat::Preserve);
    }
    ++s.step;
    p.mul_(1.0 - options_.lr * options_.weight_decay);
    s.exp_avg.mul_(b1).add_(g, 1.0 - b1);
    s.exp_avg_sq.mul_(b2).addcmul_(g, g, 1.0 - b2);
    const double bc1 = 1.0 - std::pow(b1, s.step);
    const double bc2 = 1.0 - std::pow(b2, s.step);
    const torch::Tensor denom = (s.exp_avg_sq.sqrt() / std::sqrt(bc2)).add_(options_.eps);
    p.addcdiv_(s.exp_avg, denom, -options_.lr / bc1);
  }
}

void AdamW::ZeroGrad() {
  for (torch::Tensor &p : params_) {
    if (p.grad().defined()) {
      p.grad().detach_();
      p.grad().zero_();
    }
  }
}

nlohmann::json AdamW::StateHeader() const {
  nlohmann::json steps = nlohmann::json::array();
  for (const Slot &s : slots_) steps.push_back(s.step);
  return {{"lr", options_.lr}, {"steps", steps}};
}

void AdamW::AppendStateTensors(
    const std::string &prefix,
    std::vector<std::pair<std::string, torch::Tensor>> *out) const {
  for (size_t i = 0; i < slots_.size(); ++i) {
    if (!slots_[i].exp_avg.defined()) continue;
    const std::string base = prefix + "." + std::to_string(i);
    out->emplace_back(base + ".exp_avg", slots_[i].exp_avg);
    out->emplace_back(base + ".exp_avg_sq", slots_[i].exp_avg_sq);
  }
}

void AdamW::LoadState(const nlohmann::json &header, const std::string &prefix,
                      const std::map<std::string, torch::Tensor> &tensors) {
  const auto &steps = header.at("steps");
  if (steps.size() != slots_.size())
    Fail(ErrorCode::kCheckpoint, "optimizer state for " + prefix + " has " +
                                     std::to_string(steps.size()) + " slots, model has " +
                                     std::to_string(slots_.size()));
  options_.lr = header.at("lr").get<double>();
  torch::NoGradGuard no_grad;
  for (size_t i = 0; i < slots_.size(); ++i) {
    Slot &s = slots_[i];
    s = Slot();
    s.step = steps[i].get<int64_t>();
    const std::string base = prefix + "." + std::to_string(i);
    auto m = tensors.find(base + ".exp_avg");
    auto v = tensors.find(base + ".exp_avg_sq");
    if (m == tensors.end() || v == tensors.end()) {
      if (s.step != 0) Fail(ErrorCode::kCheckpoint, "missing optimizer moments " + base);
      continue;
    }
    if (!m->second.sizes().equals(params_[i].sizes()))
      Fail(ErrorCode::kCheckpoint, "optimizer moments " + base + " have the wrong shape");
    s.exp_avg = m->second.to(params_[i].options()).clone();
    s.exp_avg_sq = v->second.to(params_[i].options()).clone();
  }
}

double CosineWarmRestartLr(int epoch, double base_lr, int t0, int t_mult, double min_lr) {
  if (epoch < 0 || t0 < 1 || t_mult < 1)
    Fail(ErrorCode::kInvalidArgument, "scheduler: invalid epoch or period");
  long t_cur = epoch, t_i = t0;
  while (t_cur >= t_i) {
    t_cur -= t_i;
    t_i *= t_mult;
  }
  return min_lr +
         (base_lr - min_lr) *
             (1.0 + std::cos(std::numbers::pi * static_cast<double>(t_cur) / t_i)) / 2.0;
}

}  // namespace artic
