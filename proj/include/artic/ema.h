// include/artic/ema.h

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

#ifndef ARTIC_EMA_H_
#define ARTIC_EMA_H_

#include <Eigen/Dense>
#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace artic {

// Row-major dense matrices used throughout the numeric (non-torch) code.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixF = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr int kNumSensors = 6;
inline constexpr int kAxesPerSensor = 3;
inline constexpr int kNumEmaChannels = kNumSensors * kAxesPerSensor;  // 18
inline constexpr double kEmaRateHz = 100.0;

// Sensor-major order; within each sensor X, Y, Z.
inline constexpr std::array<std::string_view, kNumSensors> kSensorNames = {
    "TR", "TB", "TT", "UL", "LL", "LI"};

// "TT_z" style label for channel |c| of the 18-trace layout.
std::string ChannelName(int c);

// Channel indices of the X/Z-only (12 trace) layout inside the 18-trace one.
std::vector<int> XzChannelIndices();

enum class EmaUnits { kMillimeters, kNormalized };

// Articulatory trajectories, one row per trace, one column per 100 Hz frame.
struct EmaRecording {
  Matrix values;  // [channels, T]
  double frame_rate_hz = kEmaRateHz;
  EmaUnits units = EmaUnits::kMillimeters;

  int channels() const { return static_cast<int>(values.rows()); }
  int frames() const { return static_cast<int>(values.cols()); }
  double seconds() const { return frames() / frame_rate_hz; }
};

// Throws kShapeMismatch unless the recording has 18 channels and T >= 1, and
// kInvalidArgument on NaN/Inf values.
void ValidateEma(const EmaRecording &ema);

// Per-channel min-max statistics in millimetres.
struct NormalizationState {
  std::string speaker;
  std::string scope = "per_speaker";
  std::array<double, kNumEmaChannels> min{};
  std::array<double, kNumEmaChannels> max{};
};

// Min/max of every channel over all frames of all recordings. Throws
// kConstantChannel when max - min < 1e-9 mm for any channel.
NormalizationState FitNormalizer(std::span<const EmaRecording> recordings,
                                 const std::string &speaker = "");

// (x - min) / (max - min) per channel, clipped to [0, 1].
EmaRecording Normalize(const EmaRecording &ema, const NormalizationState &stats);

// Inverse of Normalize for in-range values.
EmaRecording Denormalize(const EmaRecording &ema, const NormalizationState &stats);

}  // namespace artic

#endif  // ARTIC_EMA_H_
