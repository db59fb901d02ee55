// src/nn/masking.cc

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

#include "artic/nn/masking.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "artic/error.h"

namespace artic {

uint64_t MixSeed(uint64_t a, uint64_t b) {
  uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MaskPlan DrawMaskPlan(int64_t frames, double fraction, int span, uint64_t seed) {
  if (frames < 1) Fail(ErrorCode::kShapeMismatch, "mask: sequence is empty");
  if (span < 1) Fail(ErrorCode::kInvalidArgument, "mask: span must be >= 1");
  MaskPlan plan;
  plan.frames = frames;
  if (fraction <= 0.0) return plan;
  if (frames < span)
    Fail(ErrorCode::kSpanTooLong, "mask: span of " + std::to_string(span) +
                                      " frames exceeds sequence length " +
                                      std::to_string(frames));

  std::vector<int64_t> starts(frames - span + 1);
  std::iota(starts.begin(), starts.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(starts.begin(), starts.end(), rng);

  const double stop_at = fraction * frames - 0.5 * span;
  std::vector<char> hit(frames, 0);
  int64_t covered = 0;
  for (int64_t s : starts) {
    if (covered >= stop_at) break;
    for (int64_t t = s; t < s + span; ++t) {
      if (!hit[t]) {
        hit[t] = 1;
        ++covered;
      }
    }
  }
  for (int64_t t = 0; t < frames; ++t)
    if (hit[t]) plan.masked.push_back(t);
  return plan;
}

std::vector<MaskPlan> DrawMaskPlans(int64_t batch, int64_t frames, double fraction,
                                    int span, uint64_t seed) {
  std::vector<MaskPlan> plans;
  plans.reserve(batch);
  for (int64_t b = 0; b < batch; ++b)
    plans.push_back(DrawMaskPlan(frames, fraction, span, MixSeed(seed, b)));
  return plans;
}

torch::Tensor MaskIndicator(const std::vector<MaskPlan> &plans, torch::Device device) {
  const int64_t batch = plans.size();
  const int64_t frames = batch ? plans[0].frames : 0;
  torch::Tensor m = torch::zeros({batch, frames}, torch::kBool);
  auto acc = m.accessor<bool, 2>();
  for (int64_t b = 0; b < batch; ++b) {
    if (plans[b].frames != frames)
      Fail(ErrorCode::kShapeMismatch, "mask: plans cover different lengths");
    for (int64_t t : plans[b].masked) acc[b][t] = true;
  }
  return m.to(device);
}

torch::Tensor ApplyTimeMask(const torch::Tensor &x, const std::vector<MaskPlan> &plans,
                            const torch::Tensor &token) {
  if (x.dim() != 3 || x.size(0) != static_cast<int64_t>(plans.size()) ||
      (!plans.empty() && x.size(1) != plans[0].frames) || token.numel() != x.size(2))
    Fail(ErrorCode::kShapeMismatch, "mask: input does not match the mask plans");
  const torch::Tensor m = MaskIndicator(plans, x.device()).unsqueeze(-1);
  return torch::where(m, token.view({1, 1, -1}).to(x.dtype()), x);
}

std::pair<torch::Tensor, MaskPlan> ApplyTimeMask(const torch::Tensor &x, double fraction,
                                                 int span, uint64_t seed,
                                                 const torch::Tensor &token) {
  if (x.dim() != 2) Fail(ErrorCode::kShapeMismatch, "mask: expected [T, D]");
  MaskPlan plan = DrawMaskPlan(x.size(0), fraction, span, seed);
  torch::Tensor y = ApplyTimeMask(x.unsqueeze(0), {plan}, token).squeeze(0);
  return {y, std::move(plan)};
}

}  // namespace artic
