// src/nn/dataset.cc

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

#include "artic/nn/dataset.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "artic/error.h"
#include "artic/nn/masking.h"

namespace artic {

std::vector<int> ChannelSubset(const std::string &channels) {
  if (channels == "xz") return XzChannelIndices();
  if (channels != "xyz")
    Fail(ErrorCode::kInvalidArgument,
         "channels must be xyz or xz, got '" + channels + "'");
  std::vector<int> all(kNumEmaChannels);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

torch::Tensor EmaToTensor(const EmaRecording &ema, const std::vector<int> &channels) {
  const int64_t frames = ema.frames();
  torch::Tensor t = torch::empty({frames, static_cast<int64_t>(channels.size())});
  auto acc = t.accessor<float, 2>();
  for (size_t j = 0; j < channels.size(); ++j) {
    if (channels[j] >= ema.channels())
      Fail(ErrorCode::kShapeMismatch,
           "EMA recording lacks channel " + ChannelName(channels[j]));
    for (int64_t f = 0; f < frames; ++f)
      acc[f][j] = static_cast<float>(ema.values(channels[j], f));
  }
  return t;
}

EmaRecording TensorToEma(const torch::Tensor &frames_by_channel) {
  const torch::Tensor t =
      frames_by_channel.detach().to(torch::kFloat64).cpu().contiguous();
  if (t.dim() != 2) Fail(ErrorCode::kShapeMismatch, "expected [T, C] EMA tensor");
  EmaRecording ema;
  ema.units = EmaUnits::kNormalized;
  ema.values = Matrix(t.size(1), t.size(0));
  auto acc = t.accessor<double, 2>();
  for (int64_t f = 0; f < t.size(0); ++f)
    for (int64_t c = 0; c < t.size(1); ++c) ema.values(c, f) = acc[f][c];
  return ema;
}

torch::Tensor FeaturesToTensor(const FeatureSequence &features) {
  const MatrixF &v = features.values;
  return torch::from_blob(const_cast<float *>(v.data()), {v.rows(), v.cols()},
                          torch::kFloat32)
      .clone();
}

std::vector<TrainItem> BuildItems(std::span<const Utterance> utterances,
                                  const FeatureBackendSpec &backend,
                                  const std::string &channels) {
  const std::vector<int> subset = ChannelSubset(channels);
  std::vector<TrainItem> items;
  for (const Utterance &u : utterances) {
    const FeatureSequence feat = ExtractFeatures(backend, u);
    TrainItem item;
    item.speaker = u.speaker_id;
    item.utt = u.utterance_id;
    item.features = FeaturesToTensor(AlignToEmaRate(feat, kEmaRateHz, u.ema.frames()));
    item.ema = EmaToTensor(u.ema, subset);
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<Batch> MakeBatches(std::span<const TrainItem> items, int segment_frames,
                               int batch_size, uint64_t seed, int epoch, int pass) {
  if (items.empty()) Fail(ErrorCode::kInvalidArgument, "batches: no training items");
  if (segment_frames < 1 || batch_size < 1)
    Fail(ErrorCode::kInvalidArgument, "batches: segment and batch size must be >= 1");
  std::mt19937_64 rng(MixSeed(MixSeed(seed, epoch), pass));
  std::vector<size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  const int64_t dim = items[order[0]].features.size(1);
  const int64_t channels = items[order[0]].ema.size(1);
  std::vector<Batch> batches;
  for (size_t first = 0; first < order.size(); first += batch_size) {
    const int64_t n = std::min<size_t>(batch_size, order.size() - first);
    Batch b;
    b.features = torch::zeros({n, segment_frames, dim});
    b.ema = torch::zeros({n, segment_frames, channels});
    b.valid = torch::zeros({n, segment_frames});
    for (int64_t i = 0; i < n; ++i) {
      const TrainItem &item = items[order[first + i]];
      if (item.features.size(1) != dim || item.ema.size(1) != channels ||
          item.features.size(0) != item.frames())
        Fail(ErrorCode::kShapeMismatch,
             "batches: item " + item.id() + " has mismatched shape");
      const int64_t frames = item.frames();
      const int64_t len = std::min<int64_t>(frames, segment_frames);
      const int64_t start =
          frames > segment_frames
              ? std::uniform_int_distribution<int64_t>(0, frames - segment_frames)(rng)
              : 0;
      b.features[i].narrow(0, 0, len).copy_(item.features.narrow(0, start, len));
      b.ema[i].narrow(0, 0, len).copy_(item.ema.narrow(0, start, len));
      b.valid[i].narrow(0, 0, len).fill_(1.0f);
      b.ids.push_back(item.id());
    }
    batches.push_back(std::move(b));
  }
  return batches;
}

}  // namespace artic
