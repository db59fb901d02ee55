// include/artic/nn/snake.h

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

#ifndef ARTIC_NN_SNAKE_H_
#define ARTIC_NN_SNAKE_H_

#include <torch/torch.h>

namespace artic {

// x + sin^2(a x) / a, elementwise, with a fixed (not learned) a > 0.
torch::Tensor Snake(const torch::Tensor &x, double a);

}  // namespace artic

#endif  // ARTIC_NN_SNAKE_H_
