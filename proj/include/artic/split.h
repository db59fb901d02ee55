// include/artic/split.h

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

#ifndef ARTIC_SPLIT_H_
#define ARTIC_SPLIT_H_

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace artic {

struct UtteranceKey {
  std::string speaker;
  std::string utt;
};

struct SplitSpec {
  std::string held_out_speaker;
  std::set<std::string> train_speakers;
  uint64_t seed = 0;
};

// Leave-one-speaker-out partition. Indices refer to the input keys; the
// train order is a seeded shuffle, the test order follows the input.
struct LosoSplit {
  SplitSpec spec;
  std::vector<size_t> train;
  std::vector<size_t> test;
};

// Throws kUnknownSpeaker when |held_out_speaker| has no utterances.
LosoSplit MakeLosoSplit(std::span<const UtteranceKey> corpus,
                        const std::string &held_out_speaker, uint64_t seed);

}  // namespace artic

#endif  // ARTIC_SPLIT_H_
