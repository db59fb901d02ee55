// src/core/error.cc

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

#include "artic/error.h"

namespace artic {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "E_INVALID_ARGUMENT";
    case ErrorCode::kShapeMismatch:
      return "E_SHAPE_MISMATCH";
    case ErrorCode::kConstantChannel:
      return "E_CONSTANT_CHANNEL";
    case ErrorCode::kWindowTooLarge:
      return "E_WINDOW_TOO_LARGE";
    case ErrorCode::kEmptyAudio:
      return "E_EMPTY_AUDIO";
    case ErrorCode::kAudioTooShort:
      return "E_AUDIO_TOO_SHORT";
    case ErrorCode::kUnknownSpeaker:
      return "E_UNKNOWN_SPEAKER";
    case ErrorCode::kMissingCache:
      return "E_MISSING_CACHE";
    case ErrorCode::kDimMismatch:
      return "E_DIM_MISMATCH";
    case ErrorCode::kSpanTooLong:
      return "E_SPAN_TOO_LONG";
    case ErrorCode::kConstantInput:
      return "E_CONSTANT_INPUT";
    case ErrorCode::kNonFiniteLoss:
      return "E_NON_FINITE_LOSS";
    case ErrorCode::kDurationMismatch:
      return "E_DURATION_MISMATCH";
    case ErrorCode::kMalformedManifest:
      return "E_MALFORMED_MANIFEST";
    case ErrorCode::kMalformedConfig:
      return "E_MALFORMED_CONFIG";
    case ErrorCode::kUnknownConfigKey:
      return "E_UNKNOWN_CONFIG_KEY";
    case ErrorCode::kUnknownVariant:
      return "E_UNKNOWN_VARIANT";
    case ErrorCode::kCheckpoint:
      return "E_CHECKPOINT";
    case ErrorCode::kIo:
      return "E_IO";
  }
  return "E_UNKNOWN";
}

int ErrorExitStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kMalformedConfig:
    case ErrorCode::kUnknownConfigKey:
    case ErrorCode::kUnknownVariant:
    case ErrorCode::kUnknownSpeaker:
      return 2;
    case ErrorCode::kIo:
    case ErrorCode::kMissingCache:
    case ErrorCode::kMalformedManifest:
    case ErrorCode::kCheckpoint:
      return 3;
    case ErrorCode::kNonFiniteLoss:
      return 4;
    default:
      return 1;
  }
}

}  // namespace artic
