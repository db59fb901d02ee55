// include/artic/nn/ablation.h

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

#ifndef ARTIC_NN_ABLATION_H_
#define ARTIC_NN_ABLATION_H_

#include <map>
#include <string>
#include <vector>

#include "artic/config.h"
#include "artic/corpus.h"
#include "artic/metrics.h"
#include "artic/nn/training.h"

namespace artic {

// proposed, mfcc_input, no_pnp, no_local, no_global, mlp, no_mdpd.
const std::vector<std::string> &AblationVariants();

// |base| with the variant's substitution applied; kUnknownVariant lists the
// accepted names.
RunConfig ApplyAblation(const RunConfig &base, const std::string &variant);

// Inverter-side parameters (projection, mask token, trunk, head).
int64_t InverterParameterCount(const InverterConfig &config);

struct AblationResult {
  std::string variant;
  int64_t params = 0;
  EvalReport report;
  std::vector<EpochLog> history;
};

// Trains the variant on every speaker but |held_out| and evaluates on
// |held_out|. |corpus| is preprocessed (normalized) data with its per-speaker
// statistics. With |out_dir| the run's metrics and checkpoint land there.
AblationResult RunAblation(const std::string &variant, const RunConfig &base,
                           const std::vector<Utterance> &corpus,
                           const std::map<std::string, NormalizationState> &stats,
                           const std::string &held_out,
                           const std::filesystem::path &out_dir = {});

}  // namespace artic

#endif  // ARTIC_NN_ABLATION_H_
