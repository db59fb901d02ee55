// src/core/split.cc

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

#include "artic/split.h"

#include <algorithm>
#include <random>

#include "artic/error.h"

namespace artic {

LosoSplit MakeLosoSplit(std::span<const UtteranceKey> corpus,
                        const std::string &held_out_speaker, uint64_t seed) {
  LosoSplit split;
  split.spec.held_out_speaker = held_out_speaker;
  split.spec.seed = seed;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].speaker == held_out_speaker) {
      split.test.push_back(i);
    } else {
      split.train.push_back(i);
      split.spec.train_speakers.insert(corpus[i].speaker);
    }
  }
  if (split.test.empty())
    Fail(ErrorCode::kUnknownSpeaker,
         "speaker '" + held_out_speaker + "' not present in corpus");
  std::mt19937_64 rng(seed);
  std::shuffle(split.train.begin(), split.train.end(), rng);
  return split;
}

}  // namespace artic
