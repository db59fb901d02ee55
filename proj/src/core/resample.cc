// src/core/resample.cc

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

#include "artic/resample.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "artic/error.h"

namespace artic {

namespace {

struct KernelParams {
  double cutoff;      // cycles per input sample
  double half_width;  // input samples
  double beta;
  double i0_beta;
};

double KernelTap(const KernelParams &p, double d) {
  const double u = d / p.half_width;
  if (std::abs(u) > 1.0) return 0.0;
  const double window =
      std::cyl_bessel_i(0.0, p.beta * std::sqrt(1.0 - u * u)) / p.i0_beta;
  const double arg = 2.0 * p.cutoff * d;
  const double sinc =
      arg == 0.0 ? 1.0 : std::sin(std::numbers::pi * arg) / (std::numbers::pi * arg);
  return window * sinc;
}

}  // namespace

std::vector<float> ResampleAudio(std::span<const float> audio, int from_hz, int to_hz,
                                 const ResampleOptions &opts) {
  if (audio.empty()) Fail(ErrorCode::kEmptyAudio, "resample: empty audio");
  if (!(from_hz > 0 && to_hz > 0))
    Fail(ErrorCode::kInvalidArgument, "resample: rates must be > 0, got " +
                                          std::to_string(from_hz) + " -> " +
                                          std::to_string(to_hz));
  if (from_hz == to_hz) return std::vector<float>(audio.begin(), audio.end());

  const long g = std::gcd(from_hz, to_hz);
  const long up = to_hz / g, down = from_hz / g;
  KernelParams params;
  // Downsampling cuts at the output Nyquist, upsampling at the input one.
  params.cutoff =
      0.5 * std::min(1.0, static_cast<double>(to_hz) / from_hz) * opts.rolloff;
  params.half_width = opts.zero_crossings / (2.0 * params.cutoff);
  params.beta = opts.kaiser_beta;
  params.i0_beta = std::cyl_bessel_i(0.0, opts.kaiser_beta);

  // Output sample n sits at input position n * down / up; its fractional part
  // takes one of |up| values, so the taps are tabulated once per phase.
  const long reach = static_cast<long>(std::ceil(params.half_width));
  const long taps = 2 * reach + 1;
  std::vector<double> table(up * taps);
  for (long phase = 0; phase < up; ++phase) {
    const double frac = static_cast<double>(phase) / up;
    for (long j = 0; j < taps; ++j)
      table[phase * taps + j] = KernelTap(params, (j - reach) - frac);
  }

  const long n_in = static_cast<long>(audio.size());
  const long n_out = std::lround(n_in * static_cast<double>(up) / down);
  std::vector<float> out(n_out);
  for (long n = 0; n < n_out; ++n) {
    const long base = (n * down) / up;
    const long phase = (n * down) % up;
    const double *w = &table[phase * taps];
    double acc = 0.0, wsum = 0.0;
    for (long j = 0; j < taps; ++j) {
      const long k = base + j - reach;
      if (k < 0 || k >= n_in) continue;
      acc += w[j] * audio[k];
      wsum += w[j];
    }
    // Normalising by the tap sum keeps unit DC gain, including at the edges.
    out[n] = static_cast<float>(wsum != 0.0 ? acc / wsum : 0.0);
  }
  return out;
}

}  // namespace artic
