// src/nn/evaluate.cc

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

#include "artic/nn/evaluate.h"

#include "artic/error.h"

namespace artic {

torch::Tensor Predict(InverterModel &model, const torch::Tensor &features) {
  if (features.dim() != 2)
    Fail(ErrorCode::kShapeMismatch, "predict: expected [T, d] features");
  const bool was_training = model->is_training();
  model->eval();
  torch::Tensor out;
  {
    torch::NoGradGuard no_grad;
    out = model->forward(features.unsqueeze(0)).squeeze(0);
  }
  model->train(was_training);
  return out;
}

std::vector<EvalItem> PredictAll(InverterModel &model, const EvalSet &set) {
  const std::vector<int> subset = ChannelSubset(set.channels);
  std::vector<EvalItem> out;
  for (const TrainItem &item : set.items) {
    auto stats = set.stats.find(item.speaker);
    if (stats == set.stats.end())
      Fail(ErrorCode::kUnknownSpeaker,
           "evaluate: no normalizer for speaker " + item.speaker);
    EvalItem e;
    e.speaker = item.speaker;
    e.utt = item.utt;
    e.predicted = TensorToEma(Predict(model, item.features));
    e.reference = TensorToEma(item.ema);
    e.stats = &stats->second;
    if (set.channels != "xyz") e.stats_channels = subset;
    out.push_back(std::move(e));
  }
  return out;
}

EvalReport EvaluateSpeaker(InverterModel &model, const EvalSet &set) {
  std::vector<std::string> names;
  for (int c : ChannelSubset(set.channels)) names.push_back(ChannelName(c));
  return Aggregate(PredictAll(model, set), names);
}

}  // namespace artic
