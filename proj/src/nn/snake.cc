// src/nn/snake.cc

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

#include "artic/nn/snake.h"

#include "artic/error.h"

namespace artic {

torch::Tensor Snake(const torch::Tensor &x, double a) {
  if (!(a > 0.0)) Fail(ErrorCode::kInvalidArgument, "snake: a must be > 0");
  const torch::Tensor s = torch::sin(x * a);
  return x + s * s / a;
}

}  // namespace artic
