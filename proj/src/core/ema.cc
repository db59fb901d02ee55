// src/core/ema.cc

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

#include "artic/ema.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "artic/error.h"

namespace artic {

namespace {

constexpr double kMinRangeMm = 1e-9;

void CheckChannels(const EmaRecording &ema, const char *what) {
  if (ema.channels() != kNumEmaChannels)
    Fail(ErrorCode::kShapeMismatch,
         std::string(what) + ": expected " + std::to_string(kNumEmaChannels) +
             " channels, got " + std::to_string(ema.channels()));
}

}  // namespace

std::string ChannelName(int c) {
  static constexpr char kAxes[] = {'x', 'y', 'z'};
  return std::string(kSensorNames.at(c / kAxesPerSensor)) + "_" +
         kAxes[c % kAxesPerSensor];
}

std::vector<int> XzChannelIndices() {
  std::vector<int> idx;
  for (int s = 0; s < kNumSensors; ++s) {
    idx.push_back(s * kAxesPerSensor);
    idx.push_back(s * kAxesPerSensor + 2);
  }
  return idx;
}

void ValidateEma(const EmaRecording &ema) {
  CheckChannels(ema, "EmaRecording");
  if (ema.frames() < 1) Fail(ErrorCode::kShapeMismatch, "EmaRecording: zero frames");
  if (!ema.values.allFinite())
    Fail(ErrorCode::kInvalidArgument, "EmaRecording: NaN or Inf value");
}

NormalizationState FitNormalizer(std::span<const EmaRecording> recordings,
                                 const std::string &speaker) {
  if (recordings.empty())
    Fail(ErrorCode::kInvalidArgument, "FitNormalizer: no recordings");
  NormalizationState stats;
  stats.speaker = speaker;
  stats.min.fill(std::numeric_limits<double>::infinity());
  stats.max.fill(-std::numeric_limits<double>::infinity());
  for (const EmaRecording &rec : recordings) {
    CheckChannels(rec, "FitNormalizer");
    if (rec.frames() == 0) continue;
    for (int c = 0; c < kNumEmaChannels; ++c) {
      stats.min[c] = std::min(stats.min[c], rec.values.row(c).minCoeff());
      stats.max[c] = std::max(stats.max[c], rec.values.row(c).maxCoeff());
    }
  }
  for (int c = 0; c < kNumEmaChannels; ++c) {
    if (!(stats.max[c] - stats.min[c] >= kMinRangeMm))
      Fail(ErrorCode::kConstantChannel,
           "FitNormalizer: channel " + ChannelName(c) + " is constant");
  }
  return stats;
}

EmaRecording Normalize(const EmaRecording &ema, const NormalizationState &stats) {
  CheckChannels(ema, "Normalize");
  EmaRecording out = ema;
  out.units = EmaUnits::kNormalized;
  for (int c = 0; c < kNumEmaChannels; ++c) {
    const double lo = stats.min[c];
    const double range = stats.max[c] - lo;
    for (Eigen::Index t = 0; t < out.values.cols(); ++t)
      out.values(c, t) = std::clamp((ema.values(c, t) - lo) / range, 0.0, 1.0);
  }
  return out;
}

EmaRecording Denormalize(const EmaRecording &ema, const NormalizationState &stats) {
  CheckChannels(ema, "Denormalize");
  EmaRecording out = ema;
  out.units = EmaUnits::kMillimeters;
  for (int c = 0; c < kNumEmaChannels; ++c) {
    const double lo = stats.min[c];
    const double range = stats.max[c] - lo;
    out.values.row(c) = (ema.values.row(c).array() * range + lo).matrix();
  }
  return out;
}

}  // namespace artic
