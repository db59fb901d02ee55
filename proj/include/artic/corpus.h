// include/artic/corpus.h

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

#ifndef ARTIC_CORPUS_H_
#define ARTIC_CORPUS_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "artic/ema.h"

namespace artic {

inline constexpr int kModelAudioRateHz = 16000;
inline constexpr double kMaxDurationMismatchSec = 0.05;

struct Utterance {
  std::string speaker_id;
  std::string utterance_id;
  std::vector<float> audio;  // mono PCM
  int audio_rate_hz = kModelAudioRateHz;
  EmaRecording ema;

  double audio_seconds() const {
    return static_cast<double>(audio.size()) / audio_rate_hz;
  }
};

// Throws kDurationMismatch when audio and EMA durations differ by more than
// kMaxDurationMismatchSec.
void ValidateUtterance(const Utterance &utt);

// One manifest line. Paths are relative to the manifest's directory.
struct ManifestEntry {
  std::string speaker;
  std::string utt;
  std::string audio_path;
  std::string ema_path;
  std::string meta_path;
};

struct Manifest {
  std::filesystem::path root;  // directory the relative paths resolve against
  std::vector<ManifestEntry> entries;

  std::vector<std::string> Speakers() const;  // sorted, unique
};

// JSON-lines manifest. Throws kMalformedManifest naming the line on bad input
// and kIo when the file cannot be read.
Manifest ReadManifest(const std::filesystem::path &path);
void WriteManifest(const std::filesystem::path &path, const Manifest &manifest);

// Raw little-endian float32 arrays.
std::vector<float> ReadF32(const std::filesystem::path &path);
void WriteF32(const std::filesystem::path &path, std::span<const float> data);

// Writes to "<path>.tmp" and renames over |path|.
void WriteFileAtomic(const std::filesystem::path &path, const std::string &bytes);

// Loads audio.f32 + ema.f32 + meta.json for one manifest entry. Throws kIo
// naming the missing path.
Utterance LoadUtterance(const Manifest &manifest, const ManifestEntry &entry);
std::vector<Utterance> LoadCorpus(const Manifest &manifest);

// Writes <root>/<speaker>/<utt>/{audio.f32,ema.f32,meta.json} for every
// utterance and returns the manifest describing them (also written to
// <root>/manifest.jsonl). EMA is stored in the recording's own units; the
// meta file records them as "ema_units".
Manifest WriteCorpus(const std::filesystem::path &root,
                     std::span<const Utterance> utterances);

// {"speaker", "scope", "min": [18], "max": [18]}
void WriteNormalizer(const std::filesystem::path &path, const NormalizationState &stats);
NormalizationState ReadNormalizer(const std::filesystem::path &path);

// RIFF/WAVE reader for 16-bit PCM and 32-bit float; channels are averaged.
struct WavAudio {
  std::vector<float> samples;
  int rate_hz = 0;
};
WavAudio ReadWav(const std::filesystem::path &path);
void WriteWav(const std::filesystem::path &path, std::span<const float> samples,
              int rate_hz);

}  // namespace artic

#endif  // ARTIC_CORPUS_H_
