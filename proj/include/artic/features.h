// include/artic/features.h

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

#ifndef ARTIC_FEATURES_H_
#define ARTIC_FEATURES_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "artic/corpus.h"
#include "artic/ema.h"

namespace artic {

struct FeatureSequence {
  MatrixF values;  // [T', d]
  double frame_rate_hz = 0.0;
  std::string backend;

  int frames() const { return static_cast<int>(values.rows()); }
  int dim() const { return static_cast<int>(values.cols()); }
};

enum class FeatureBackend { kPrecomputedSsl, kMfcc, kStub };

struct FeatureBackendSpec {
  FeatureBackend backend = FeatureBackend::kStub;
  int dim = 1024;
  double native_rate_hz = 100.0;
  // Root of the feature cache; required by kPrecomputedSsl.
  std::filesystem::path cache_root;
  uint64_t stub_seed = 0x5eed;
};

// {precomputed_ssl: 1024 @ 50 Hz, mfcc: 39 @ 100 Hz, stub: 1024 @ 100 Hz}.
FeatureBackendSpec DefaultBackendSpec(FeatureBackend backend);
FeatureBackend ParseBackend(const std::string &name);  // kInvalidArgument
std::string BackendName(FeatureBackend backend);

// Shared short-time analysis: 25 ms Hamming windows every 10 ms on 16 kHz
// audio. Frame k is centred at k*hop + hop/2 and edges are mirrored, giving
// (N + hop/2) / hop frames.
inline constexpr int kFrameLength = 400;
inline constexpr int kFrameShift = 160;
int NumFrames(long num_samples);

// Log mel-filterbank energies, [frames, bands].
MatrixF LogMelSpectrogram(std::span<const float> audio, int bands);

// 13 cepstra + deltas + delta-deltas. A fixed-seed dither of |dither| is added
// before analysis.
MatrixF Mfcc(std::span<const float> audio, double dither = 1.0 / 32768.0);

// Audio must be 16 kHz. Throws kAudioTooShort below one analysis window,
// kMissingCache for precomputed_ssl without a cache entry.
FeatureSequence ExtractFeatures(const FeatureBackendSpec &spec, const Utterance &utt);

// Linear interpolation to |target_hz| followed by truncation or zero padding
// to exactly |target_frames| frames.
FeatureSequence AlignToEmaRate(const FeatureSequence &feat, double target_hz,
                               int target_frames);

// <cache>/<backend>/<speaker>/<utt>.f32 + <utt>.json {dim, rate_hz, backend, frames}.
std::filesystem::path CachePath(const std::filesystem::path &cache_root,
                                const std::string &backend, const std::string &speaker,
                                const std::string &utt);
void CacheWrite(const std::filesystem::path &cache_root, const std::string &speaker,
                const std::string &utt, const FeatureSequence &feat);
// Throws kMissingCache when absent.
FeatureSequence CacheRead(const std::filesystem::path &cache_root,
                          const std::string &backend, const std::string &speaker,
                          const std::string &utt);
bool CacheHas(const std::filesystem::path &cache_root, const std::string &backend,
              const std::string &speaker, const std::string &utt);

}  // namespace artic

#endif  // ARTIC_FEATURES_H_
