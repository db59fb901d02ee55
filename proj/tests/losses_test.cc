// tests/losses_test.cc

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

#include <torch/torch.h>
#undef CHECK  // c10 logging macro; doctest provides its own

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "artic/nn/losses.h"
#include "artic/nn/optim.h"
#include "doctest.h"
#include "test_util.h"

using namespace artic;

namespace {

using Maps = std::vector<std::vector<torch::Tensor>>;

std::vector<torch::Tensor> Full(double v, std::vector<int64_t> lens) {
  std::vector<torch::Tensor> out;
  for (int64_t n : lens) out.push_back(torch::full({2, n}, v, torch::kFloat64));
  return out;
}

double Val(const torch::Tensor &t) { return t.item<double>(); }

// Direct summation over accessors, independent of tensor reductions.
double SumSq(const torch::Tensor &a, double shift) {
  const torch::Tensor f = a.contiguous().view({-1});
  double s = 0.0;
  for (int64_t i = 0; i < f.numel(); ++i) s += std::pow(f[i].item<double>() - shift, 2);
  return s / f.numel();
}

double FmOracle(const Maps &real, const Maps &fake) {
  double total = 0.0;
  for (size_t i = 0; i < real.size(); ++i) {
    for (size_t l = 0; l < real[i].size(); ++l) {
      const torch::Tensor r = real[i][l].contiguous().view({-1});
      const torch::Tensor f = fake[i][l].contiguous().view({-1});
      double s = 0.0;
      for (int64_t k = 0; k < r.numel(); ++k)
        s += std::abs(r[k].item<double>() - f[k].item<double>());
      total += s / r.numel();
    }
  }
  return total / real.size();
}

Maps RandomMaps(int subs, int layers) {
  Maps m(subs);
  for (int i = 0; i < subs; ++i)
    for (int l = 0; l < layers; ++l)
      m[i].push_back(torch::randn({2, 5 + i, 3}, torch::kFloat64));
  return m;
}

}  // namespace

TEST_CASE("reconstruction loss") {
  torch::manual_seed(0);
  const torch::Tensor a = torch::randn({3, 20, 18}, torch::kFloat64);
  CHECK(Val(ReconLoss(a, a)) == 0.0);
  CHECK(std::abs(Val(ReconLoss(torch::ones_like(a), torch::zeros_like(a))) - 1.0) < 1e-7);
  const torch::Tensor b = torch::randn({3, 20, 18}, torch::kFloat64);
  double s = 0.0;
  auto aa = a.accessor<double, 3>(), ba = b.accessor<double, 3>();
  for (int i = 0; i < 3; ++i)
    for (int t = 0; t < 20; ++t)
      for (int c = 0; c < 18; ++c) s += std::pow(aa[i][t][c] - ba[i][t][c], 2);
  CHECK(std::abs(Val(ReconLoss(a, b)) - s / (3 * 20 * 18)) < 1e-7);

  // Valid mask: padding frames do not count.
  torch::Tensor valid = torch::ones({3, 20}, torch::kFloat64);
  valid[1].narrow(0, 10, 10).zero_();
  torch::Tensor b2 = b.clone();
  b2[1].narrow(0, 10, 10).add_(100.0);
  CHECK(std::abs(Val(ReconLoss(a, b, valid)) - Val(ReconLoss(a, b2, valid))) < 1e-12);
  CHECK_ERROR_CODE(ReconLoss(a, b.narrow(1, 0, 5)), ErrorCode::kShapeMismatch);
}

TEST_CASE("least-squares adversarial identities") {
  const std::vector<int64_t> lens = {2400, 1600, 1440, 960, 800};
  CHECK(Val(AdvDLoss(Full(1.0, lens), Full(0.0, lens))) == 0.0);
  CHECK(std::abs(Val(AdvDLoss(Full(0.5, lens), Full(0.5, lens))) - 0.5) < 1e-7);
  CHECK(std::abs(Val(AdvDLoss(Full(0.0, lens), Full(1.0, lens))) - 2.0) < 1e-7);
  CHECK(Val(AdvGLoss(Full(1.0, lens))) == 0.0);
  CHECK(std::abs(Val(AdvGLoss(Full(0.0, lens))) - 1.0) < 1e-7);
  CHECK(std::abs(Val(AdvGLoss(Full(0.5, lens))) - 0.25) < 1e-7);
  CHECK(std::abs(Val(AdvGLoss(Full(0.5, lens), "sum")) - 1.25) < 1e-7);

  torch::manual_seed(1);
  std::vector<torch::Tensor> real, fake;
  for (int64_t n : {30, 20, 12}) {
    real.push_back(torch::randn({2, n}, torch::kFloat64));
    fake.push_back(torch::randn({2, n}, torch::kFloat64));
  }
  double d = 0.0, g = 0.0;
  for (size_t i = 0; i < 3; ++i) {
    d += SumSq(real[i], 1.0) + SumSq(fake[i], 0.0);
    g += SumSq(fake[i], 1.0);
  }
  CHECK(std::abs(Val(AdvDLoss(real, fake)) - d / 3) < 1e-6);
  CHECK(std::abs(Val(AdvGLoss(fake)) - g / 3) < 1e-6);
  CHECK(Val(AdvDLoss(real, fake)) >= 0.0);

  // Pushing the fake score toward 1 lowers adv_g.
  torch::Tensor s = torch::full({1, 4}, 0.3, torch::kFloat64).requires_grad_();
  AdvGLoss({s}).backward();
  CHECK((s.grad() < 0).all().item<bool>());
}

TEST_CASE("feature matching") {
  torch::manual_seed(2);
  const Maps real = RandomMaps(5, 7);
  CHECK(Val(FeatureMatchingLoss(real, real)) == 0.0);
  Maps shifted = real;
  for (auto &sub : shifted)
    for (auto &l : sub) l = l + 1.0;
  CHECK(std::abs(Val(FeatureMatchingLoss(real, shifted)) - 7.0) < 1e-7);
  const Maps fake = RandomMaps(5, 7);
  CHECK(std::abs(Val(FeatureMatchingLoss(real, fake)) - FmOracle(real, fake)) < 1e-6);

  // No gradient reaches the real branch.
  Maps r = RandomMaps(2, 2), f = RandomMaps(2, 2);
  for (auto &sub : r)
    for (auto &l : sub) l.requires_grad_();
  for (auto &sub : f)
    for (auto &l : sub) l.requires_grad_();
  FeatureMatchingLoss(r, f).backward();
  CHECK(!r[0][0].grad().defined());
  CHECK(f[0][0].grad().defined());

  Maps short_fake = fake;
  short_fake[0].pop_back();
  CHECK_ERROR_CODE(FeatureMatchingLoss(real, short_fake), ErrorCode::kShapeMismatch);
}

TEST_CASE("composite losses") {
  LossConfig w;
  LossBundle b = Compose(1, 1, 1, 1, w);
  CHECK(b.L_I == 3.0);
  CHECK(b.L_D == 1.0);
  CHECK(b.L_total == 4.0);
  LossConfig zero{0, 0, 0, 0, "mean"};
  b = Compose(1, 2, 3, 4, zero);
  CHECK(b.L_I == 0.0);
  CHECK(b.L_D == 0.0);
  CHECK(b.L_total == 0.0);
  w.w_fm = 2.0;
  b = Compose(0.5, 0.25, 0.75, 0.125, w);
  CHECK(b.L_I == 0.25 + 0.5 + 2 * 0.125);
}

TEST_CASE("adamw matches torch::optim::AdamW") {
  torch::manual_seed(3);
  torch::Tensor a = torch::randn({5, 4}, torch::kFloat64).requires_grad_();
  torch::Tensor b = a.detach().clone().requires_grad_();
  const torch::Tensor target = torch::randn({5, 4}, torch::kFloat64);
  AdamWOptions o{
      .lr = 1e-2, .beta1 = 0.8, .beta2 = 0.99, .eps = 1e-8, .weight_decay = 0.01};
  AdamW mine({a}, o);
  torch::optim::AdamW ref(
      {b},
      torch::optim::AdamWOptions(1e-2).betas({0.8, 0.99}).eps(1e-8).weight_decay(0.01));
  for (int step = 0; step < 50; ++step) {
    mine.ZeroGrad();
    ref.zero_grad();
    (a - target).pow(3).abs().sum().backward();
    (b - target).pow(3).abs().sum().backward();
    mine.Step();
    ref.step();
  }
  CHECK((a - b).abs().max().item<double>() < 1e-12);
}

TEST_CASE("adamw state survives export and import") {
  torch::manual_seed(4);
  torch::Tensor a = torch::randn({3}).requires_grad_();
  AdamW opt({a}, {});
  a.square().sum().backward();
  opt.Step();
  std::vector<std::pair<std::string, torch::Tensor>> tensors;
  opt.AppendStateTensors("o", &tensors);
  std::map<std::string, torch::Tensor> m(tensors.begin(), tensors.end());
  torch::Tensor a2 = a.detach().clone().requires_grad_();
  AdamW opt2({a2}, {});
  opt2.LoadState(opt.StateHeader(), "o", m);
  for (AdamW *o : {&opt, &opt2}) o->ZeroGrad();
  a.square().sum().backward();
  a2.square().sum().backward();
  opt.Step();
  opt2.Step();
  CHECK(torch::equal(a, a2));
  CHECK_ERROR_CODE(opt2.LoadState({{"lr", 1.0}, {"steps", {1, 2}}}, "o", m),
                   ErrorCode::kCheckpoint);
}

TEST_CASE("cosine warm restarts match the closed form") {
  auto closed = [](int e, double base, int t0, int mult, double lo) {
    double t_cur, t_i;
    if (mult == 1) {
      t_cur = e % t0;
      t_i = t0;
    } else {
      const int n = static_cast<int>(std::floor(std::log(e * (mult - 1.0) / t0 + 1.0) /
                                                std::log(static_cast<double>(mult))));
      t_cur = e - t0 * (std::pow(mult, n) - 1.0) / (mult - 1.0);
      t_i = t0 * std::pow(mult, n);
    }
    return lo + (base - lo) * (1.0 + std::cos(std::numbers::pi * t_cur / t_i)) / 2.0;
  };
  for (int mult : {1, 2, 3})
    for (int e = 0; e < 300; ++e)
      CHECK(std::abs(CosineWarmRestartLr(e, 2e-4, 10, mult, 1e-6) -
                     closed(e, 2e-4, 10, mult, 1e-6)) < 1e-9);
  CHECK(CosineWarmRestartLr(0, 2e-4, 10, 2, 1e-6) == 2e-4);
  CHECK(CosineWarmRestartLr(10, 2e-4, 10, 2, 1e-6) == 2e-4);
  CHECK(CosineWarmRestartLr(30, 2e-4, 10, 2, 1e-6) == 2e-4);
  CHECK(CosineWarmRestartLr(5, 2e-4, 10, 2, 1e-6) == doctest::Approx((2e-4 + 1e-6) / 2));
}
