// src/core/lowess.cc

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

#include "artic/lowess.h"

#include <algorithm>
#include <cmath>

#include "artic/error.h"

namespace artic {

namespace {

void CheckOptions(const LowessOptions &opts, int n) {
  if (opts.window_frames < 3 || opts.window_frames % 2 == 0)
    Fail(ErrorCode::kInvalidArgument, "lowess: window_frames must be odd and >= 3, got " +
                                          std::to_string(opts.window_frames));
  if (opts.window_frames > n)
    Fail(ErrorCode::kWindowTooLarge,
         "lowess: window of " + std::to_string(opts.window_frames) +
             " frames exceeds signal length " + std::to_string(n));
  if (opts.robust_iterations < 0)
    Fail(ErrorCode::kInvalidArgument, "lowess: negative robust_iterations");
}

double Tricube(double u) {
  if (u >= 1.0) return 0.0;
  const double v = 1.0 - u * u * u;
  return v * v * v;
}

double Bisquare(double u) {
  if (u >= 1.0) return 0.0;
  const double v = 1.0 - u * u;
  return v * v;
}

// One lowess pass with optional robustness weights.
void SmoothPass(std::span<const double> y, int window, const std::vector<double> &robust,
                std::vector<double> *out) {
  const int n = static_cast<int>(y.size());
  const int half = window / 2;
  for (int i = 0; i < n; ++i) {
    const int lo = std::clamp(i - half, 0, n - window);
    const int hi = lo + window - 1;
    const double h = std::max(i - lo, hi - i);
    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (int j = lo; j <= hi; ++j) {
      const double w = Tricube(std::abs(j - i) / h) * robust[j];
      sw += w;
      sx += w * j;
      sy += w * y[j];
    }
    if (sw <= 0.0) {
      (*out)[i] = y[i];
      continue;
    }
    const double xm = sx / sw, ym = sy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (int j = lo; j <= hi; ++j) {
      const double w = Tricube(std::abs(j - i) / h) * robust[j];
      sxx += w * (j - xm) * (j - xm);
      sxy += w * (j - xm) * (y[j] - ym);
    }
    const double slope = sxx > 1e-12 * sw ? sxy / sxx : 0.0;
    (*out)[i] = ym + slope * (i - xm);
  }
}

}  // namespace

std::vector<double> LowessSmooth(std::span<const double> y, const LowessOptions &opts) {
  const int n = static_cast<int>(y.size());
  CheckOptions(opts, n);
  std::vector<double> robust(n, 1.0), fit(n);
  SmoothPass(y, opts.window_frames, robust, &fit);
  for (int iter = 0; iter < opts.robust_iterations; ++iter) {
    std::vector<double> abs_res(n);
    for (int i = 0; i < n; ++i) abs_res[i] = std::abs(y[i] - fit[i]);
    std::vector<double> sorted = abs_res;
    std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
    const double scale = 6.0 * sorted[n / 2];
    if (scale <= 0.0) break;
    for (int i = 0; i < n; ++i) robust[i] = Bisquare(abs_res[i] / scale);
    SmoothPass(y, opts.window_frames, robust, &fit);
  }
  return fit;
}

EmaRecording LowessSmooth(const EmaRecording &ema, const LowessOptions &opts) {
  CheckOptions(opts, ema.frames());
  EmaRecording out = ema;
  std::vector<double> row(ema.frames());
  for (int c = 0; c < ema.channels(); ++c) {
    for (int t = 0; t < ema.frames(); ++t) row[t] = ema.values(c, t);
    const std::vector<double> smooth = LowessSmooth(row, opts);
    for (int t = 0; t < ema.frames(); ++t) out.values(c, t) = smooth[t];
  }
  return out;
}

}  // namespace artic
