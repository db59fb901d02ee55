// include/artic/preprocess.h

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

#ifndef ARTIC_PREPROCESS_H_
#define ARTIC_PREPROCESS_H_

#include <map>
#include <string>
#include <vector>

#include "artic/corpus.h"
#include "artic/ema.h"

namespace artic {

struct PreprocessOptions {
  int lowess_window = 21;
  int audio_rate_hz = kModelAudioRateHz;
};

struct PreprocessedCorpus {
  std::vector<Utterance> utterances;  // model-rate audio, smoothed and normalized EMA
  std::map<std::string, NormalizationState> stats;  // by speaker
};

// Resamples audio to the model rate, smooths EMA, then fits min-max
// statistics per speaker over all of that speaker's (smoothed) utterances and
// normalizes with them. Duration mismatches are rejected after resampling.
PreprocessedCorpus Preprocess(const std::vector<Utterance> &raw,
                              const PreprocessOptions &opts = {});

}  // namespace artic

#endif  // ARTIC_PREPROCESS_H_
