// include/artic/nn/dataset.h

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

#ifndef ARTIC_NN_DATASET_H_
#define ARTIC_NN_DATASET_H_

#include <torch/torch.h>

#include <span>
#include <string>
#include <vector>

#include "artic/corpus.h"
#include "artic/features.h"

namespace artic {

// One utterance ready for the model: features aligned to the EMA frames.
struct TrainItem {
  std::string speaker;
  std::string utt;
  torch::Tensor features;  // [T, d] float32
  torch::Tensor ema;       // [T, C] float32, normalized

  std::string id() const { return speaker + "/" + utt; }
  int64_t frames() const { return ema.size(0); }
};

// Channel subset used for training and evaluation: "xyz" (all 18) or "xz".
std::vector<int> ChannelSubset(const std::string &channels);

// [C, T] recording rows |channels| -> [T, |channels|] float32 tensor, and back.
torch::Tensor EmaToTensor(const EmaRecording &ema, const std::vector<int> &channels);
EmaRecording TensorToEma(const torch::Tensor &frames_by_channel);

torch::Tensor FeaturesToTensor(const FeatureSequence &features);

// Extracts features for every (normalized) utterance and aligns them to its
// EMA frame count.
std::vector<TrainItem> BuildItems(std::span<const Utterance> utterances,
                                  const FeatureBackendSpec &backend,
                                  const std::string &channels = "xyz");

struct Batch {
  torch::Tensor features;  // [B, S, d]
  torch::Tensor ema;       // [B, S, C]
  torch::Tensor valid;     // [B, S], 1 on real frames, 0 on padding
  std::vector<std::string> ids;
};

// Random fixed-length crops, one per utterance, in a shuffled order. Items
// shorter than |segment_frames| are zero-padded and their valid length kept
// in Batch::valid. A pure function of (seed, epoch, pass).
std::vector<Batch> MakeBatches(std::span<const TrainItem> items, int segment_frames,
                               int batch_size, uint64_t seed, int epoch, int pass = 0);

}  // namespace artic

#endif  // ARTIC_NN_DATASET_H_
