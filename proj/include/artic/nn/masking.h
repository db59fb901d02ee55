// include/artic/nn/masking.h

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

#ifndef ARTIC_NN_MASKING_H_
#define ARTIC_NN_MASKING_H_

#include <torch/torch.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace artic {

// Derives an independent 64-bit seed from |a| and |b| (splitmix64 finalizer).
uint64_t MixSeed(uint64_t a, uint64_t b);

struct MaskPlan {
  int64_t frames = 0;
  std::vector<int64_t> masked;  // sorted, unique

  double coverage() const {
    return frames == 0 ? 0.0 : static_cast<double>(masked.size()) / frames;
  }
};

// Span masking: span start positions are drawn without replacement from
// [0, frames - span] and spans (possibly overlapping) are added until the
// covered fraction is within half a span of |fraction|. Throws kSpanTooLong
// when frames < span and fraction > 0.
MaskPlan DrawMaskPlan(int64_t frames, double fraction, int span, uint64_t seed);

// One plan per batch row, each from its own derived seed.
std::vector<MaskPlan> DrawMaskPlans(int64_t batch, int64_t frames, double fraction,
                                    int span, uint64_t seed);

// [B, T] boolean indicator of masked positions.
torch::Tensor MaskIndicator(const std::vector<MaskPlan> &plans, torch::Device device);

// x: [B, T, D]; token: [D]. Masked frames are replaced by |token|.
torch::Tensor ApplyTimeMask(const torch::Tensor &x, const std::vector<MaskPlan> &plans,
                            const torch::Tensor &token);

// Single-sequence form, x: [T, D].
std::pair<torch::Tensor, MaskPlan> ApplyTimeMask(const torch::Tensor &x, double fraction,
                                                 int span, uint64_t seed,
                                                 const torch::Tensor &token);

}  // namespace artic

#endif  // ARTIC_NN_MASKING_H_
