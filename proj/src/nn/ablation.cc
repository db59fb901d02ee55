// src/nn/ablation.cc

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

#include "artic/nn/ablation.h"

#include "artic/error.h"
#include "artic/split.h"

namespace artic {

const std::vector<std::string> &AblationVariants() {
  static const std::vector<std::string> kVariants = {
      "proposed", "mfcc_input", "no_pnp", "no_local", "no_global", "mlp", "no_mdpd"};
  return kVariants;
}

RunConfig ApplyAblation(const RunConfig &base, const std::string &variant) {
  RunConfig c = base;
  if (variant == "proposed") {
  } else if (variant == "mfcc_input") {
    c.features.backend = "mfcc";
    c.inverter.input_dim = DefaultBackendSpec(FeatureBackend::kMfcc).dim;
  } else if (variant == "no_pnp") {
    c.inverter.n_conformer_blocks += c.inverter.n_pnp_blocks;
    c.inverter.n_pnp_blocks = 0;
  } else if (variant == "no_local") {
    c.inverter.trunk = "transformer";
  } else if (variant == "no_global") {
    c.inverter.trunk = "cnn";
  } else if (variant == "mlp") {
    c.inverter.trunk = "mlp";
  } else if (variant == "no_mdpd") {
    c.training.use_mdpd = false;
  } else {
    std::string names;
    for (const std::string &v : AblationVariants())
      names += (names.empty() ? "" : ", ") + v;
    Fail(ErrorCode::kUnknownVariant,
         "unknown variant '" + variant + "'; expected one of: " + names);
  }
  return c;
}

int64_t InverterParameterCount(const InverterConfig &config) {
  return CountParameters(*InverterModel(config));
}

AblationResult RunAblation(const std::string &variant, const RunConfig &base,
                           const std::vector<Utterance> &corpus,
                           const std::map<std::string, NormalizationState> &stats,
                           const std::string &held_out,
                           const std::filesystem::path &out_dir) {
  const RunConfig config = ApplyAblation(base, variant);
  std::vector<UtteranceKey> keys;
  for (const Utterance &u : corpus) keys.push_back({u.speaker_id, u.utterance_id});
  const LosoSplit split = MakeLosoSplit(keys, held_out, config.training.seed);

  FeatureBackendSpec backend = DefaultBackendSpec(ParseBackend(config.features.backend));
  backend.cache_root = config.features.cache;
  backend.stub_seed = config.features.stub_seed;
  std::vector<Utterance> train_utts, test_utts;
  for (size_t i : split.train) train_utts.push_back(corpus[i]);
  for (size_t i : split.test) test_utts.push_back(corpus[i]);

  const std::vector<TrainItem> train =
      BuildItems(train_utts, backend, config.training.channels);
  EvalSet test;
  test.items = BuildItems(test_utts, backend, config.training.channels);
  test.stats = stats;
  test.channels = config.training.channels;

  Trainer trainer(config);
  AblationResult result;
  result.variant = variant;
  result.params = CountParameters(*trainer.inverter());
  result.history = trainer.Fit(train, &test, out_dir);
  result.report = EvaluateSpeaker(trainer.inverter(), test);
  return result;
}

}  // namespace artic
