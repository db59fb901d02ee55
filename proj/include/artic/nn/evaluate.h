// include/artic/nn/evaluate.h

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

#ifndef ARTIC_NN_EVALUATE_H_
#define ARTIC_NN_EVALUATE_H_

#include <torch/torch.h>

#include <map>
#include <string>
#include <vector>

#include "artic/metrics.h"
#include "artic/nn/dataset.h"
#include "artic/nn/inverter.h"

namespace artic {

// features [T, d] -> [T, C] in eval mode without gradients. The module's
// training flag is restored afterwards.
torch::Tensor Predict(InverterModel &model, const torch::Tensor &features);

struct EvalSet {
  std::vector<TrainItem> items;
  std::map<std::string, NormalizationState> stats;  // by speaker
  std::string channels = "xyz";
};

std::vector<EvalItem> PredictAll(InverterModel &model, const EvalSet &set);

// Per-speaker and total PCC/RMSE of the model over |set|.
EvalReport EvaluateSpeaker(InverterModel &model, const EvalSet &set);

}  // namespace artic

#endif  // ARTIC_NN_EVALUATE_H_
