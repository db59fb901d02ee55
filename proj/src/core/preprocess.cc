// src/core/preprocess.cc

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

#include "artic/preprocess.h"

#include "artic/error.h"
#include "artic/lowess.h"
#include "artic/resample.h"

namespace artic {

PreprocessedCorpus Preprocess(const std::vector<Utterance> &raw,
                              const PreprocessOptions &opts) {
  if (raw.empty()) Fail(ErrorCode::kInvalidArgument, "preprocess: empty corpus");
  LowessOptions lowess;
  lowess.window_frames = opts.lowess_window;

  PreprocessedCorpus out;
  std::map<std::string, std::vector<EmaRecording>> by_speaker;
  for (const Utterance &u : raw) {
    Utterance p = u;
    if (p.audio_rate_hz != opts.audio_rate_hz) {
      p.audio = ResampleAudio(u.audio, u.audio_rate_hz, opts.audio_rate_hz);
      p.audio_rate_hz = opts.audio_rate_hz;
    }
    ValidateUtterance(p);
    try {
      p.ema = LowessSmooth(u.ema, lowess);
    } catch (const Error &e) {
      Fail(e.code(), u.speaker_id + "/" + u.utterance_id + ": " + e.what());
    }
    by_speaker[p.speaker_id].push_back(p.ema);
    out.utterances.push_back(std::move(p));
  }
  for (const auto &[speaker, recordings] : by_speaker)
    out.stats[speaker] = FitNormalizer(recordings, speaker);
  for (Utterance &u : out.utterances)
    u.ema = Normalize(u.ema, out.stats.at(u.speaker_id));
  return out;
}

}  // namespace artic
