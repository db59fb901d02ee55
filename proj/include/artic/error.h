// include/artic/error.h

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

#ifndef ARTIC_ERROR_H_
#define ARTIC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace artic {

enum class ErrorCode {
  kInvalidArgument,
  kShapeMismatch,
  kConstantChannel,
  kWindowTooLarge,
  kEmptyAudio,
  kAudioTooShort,
  kUnknownSpeaker,
  kMissingCache,
  kDimMismatch,
  kSpanTooLong,
  kConstantInput,
  kNonFiniteLoss,
  kDurationMismatch,
  kMalformedManifest,
  kMalformedConfig,
  kUnknownConfigKey,
  kUnknownVariant,
  kCheckpoint,
  kIo,
};

// Stable machine-readable tag, e.g. "E_SHAPE_MISMATCH".
std::string_view ErrorCodeName(ErrorCode code);

// Process exit status used by the command-line tool for each code.
int ErrorExitStatus(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string &message) {
  throw Error(code, message);
}

}  // namespace artic

#endif  // ARTIC_ERROR_H_
