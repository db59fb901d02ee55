// include/artic/synth.h

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

#ifndef ARTIC_SYNTH_H_
#define ARTIC_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "artic/corpus.h"

namespace artic {

// Desk-scale stand-in for a paired speech/EMA corpus.
//
// Each utterance is a random sequence of phoneme-like segments (60-180 ms).
// A phoneme fixes a set of articulatory targets and a set of tonal partials.
// The latent drivers are the targets passed through a critically damped
// causal low-pass, so the articulators lag the acoustics; the EMA traces are
// speaker-specific affine maps of the drivers plus slow sinusoidal drift, in
// millimetres. The audio follows the phoneme partials with speaker-specific
// pitch scaling.
struct SynthOptions {
  int n_speakers = 2;
  int n_utts = 4;  // per speaker
  double duration_s = 2.0;
  uint64_t seed = 7;
  int audio_rate_hz = kModelAudioRateHz;
};

inline constexpr int kSynthDrivers = 4;

struct SynthCorpus {
  std::vector<Utterance> utterances;
  std::vector<Matrix> drivers;  // [kSynthDrivers, T] per utterance
};

// Index of the driver that dominates EMA channel |c|.
int SynthPrimaryDriver(int c);

// "F01".."F04","M01".."M04" for up to eight speakers, "S01".. beyond that.
std::vector<std::string> SynthSpeakerIds(int n_speakers);

// Deterministic in |opts|. Every channel is checked to correlate with its
// primary driver above 0.5; kInvalidArgument is thrown otherwise.
SynthCorpus SynthesizeCorpus(const SynthOptions &opts);

std::vector<Utterance> SynthDataset(int n_speakers, int n_utts, double duration_s,
                                    uint64_t seed);

}  // namespace artic

#endif  // ARTIC_SYNTH_H_
