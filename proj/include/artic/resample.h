// include/artic/resample.h

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

#ifndef ARTIC_RESAMPLE_H_
#define ARTIC_RESAMPLE_H_

#include <span>
#include <vector>

namespace artic {

struct ResampleOptions {
  int zero_crossings = 32;  // kernel half-width, in zero crossings of the sinc
  double rolloff = 0.94;    // cutoff as a fraction of the lower Nyquist
  double kaiser_beta = 8.6;
};

// Band-limited resampling with a Kaiser-windowed sinc kernel. Output length
// is round(len * to_hz / from_hz); equal rates copy. Throws kEmptyAudio on
// empty input and kInvalidArgument on a non-positive rate.
std::vector<float> ResampleAudio(std::span<const float> audio, int from_hz, int to_hz,
                                 const ResampleOptions &opts = {});

}  // namespace artic

#endif  // ARTIC_RESAMPLE_H_
