// include/artic/lowess.h

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

#ifndef ARTIC_LOWESS_H_
#define ARTIC_LOWESS_H_

#include <span>
#include <vector>

#include "artic/ema.h"

namespace artic {

struct LowessOptions {
  int window_frames = 21;     // odd, >= 3; 210 ms at 100 Hz
  int robust_iterations = 0;  // bisquare reweighting passes
};

// Locally weighted linear regression with tricube weights over the
// |window_frames| nearest samples (uniformly spaced abscissa), evaluated at
// every sample. The window shifts inward near the edges so it always holds
// exactly |window_frames| points.
std::vector<double> LowessSmooth(std::span<const double> y,
                                 const LowessOptions &opts = {});

// Channel-wise LowessSmooth. Throws kWindowTooLarge when the window exceeds T
// and kInvalidArgument when it is even or smaller than 3.
EmaRecording LowessSmooth(const EmaRecording &ema, const LowessOptions &opts = {});

}  // namespace artic

#endif  // ARTIC_LOWESS_H_
