// src/core/synth.cc

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

#include "artic/synth.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "artic/error.h"
#include "artic/metrics.h"

namespace artic {

namespace {

constexpr int kPhonemes = 10;
constexpr int kPartials = 3;
constexpr double kDriverTauSec = 0.03;
constexpr double kMixWeight = 0.25;
constexpr int kMaxAttempts = 16;

struct Phoneme {
  std::array<double, kSynthDrivers> target;
  std::array<double, kPartials> freq_hz;
  std::array<double, kPartials> amp;
};

struct Speaker {
  std::array<double, kNumEmaChannels> offset_mm;
  std::array<double, kNumEmaChannels> scale_mm;
  std::array<double, kNumEmaChannels> drift_hz;
  std::array<double, kNumEmaChannels> drift_phase;
  double pitch_factor;
};

std::mt19937_64 Rng(uint64_t seed, uint64_t a, uint64_t b) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(a), static_cast<uint32_t>(b),
                    static_cast<uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

double Uniform(std::mt19937_64 &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<Phoneme> MakeInventory(uint64_t seed) {
  auto rng = Rng(seed, 0xA11CE, 0);
  std::vector<Phoneme> inv(kPhonemes);
  for (Phoneme &p : inv) {
    for (double &t : p.target) t = Uniform(rng, -1.0, 1.0);
    for (int i = 0; i < kPartials; ++i) {
      // One partial per band keeps phonemes spectrally distinct.
      const double lo = 250.0 * std::pow(3.2, i), hi = lo * 3.0;
      p.freq_hz[i] = Uniform(rng, lo, hi);
      p.amp[i] = Uniform(rng, 0.3, 1.0);
    }
  }
  return inv;
}

// Row-wise mixing of drivers into channels, shared by all speakers.
Matrix MakeMixing(uint64_t seed) {
  auto rng = Rng(seed, 0xB0B, 0);
  Matrix w(kNumEmaChannels, kSynthDrivers);
  for (int c = 0; c < kNumEmaChannels; ++c)
    for (int j = 0; j < kSynthDrivers; ++j)
      w(c, j) = j == SynthPrimaryDriver(c) ? 1.0 : Uniform(rng, -kMixWeight, kMixWeight);
  return w;
}

Speaker MakeSpeaker(uint64_t seed, int index) {
  auto rng = Rng(seed, 0x5BEA, static_cast<uint64_t>(index));
  Speaker s;
  for (int c = 0; c < kNumEmaChannels; ++c) {
    s.offset_mm[c] = Uniform(rng, -30.0, 30.0);
    s.scale_mm[c] = Uniform(rng, 3.0, 12.0);
    s.drift_hz[c] = Uniform(rng, 0.2, 1.0);
    s.drift_phase[c] = Uniform(rng, 0.0, 2.0 * std::numbers::pi);
  }
  s.pitch_factor = Uniform(rng, 0.9, 1.1);
  return s;
}

}  // namespace

int SynthPrimaryDriver(int c) { return c % kSynthDrivers; }

std::vector<std::string> SynthSpeakerIds(int n_speakers) {
  static const char *kHprc[] = {"F01", "F02", "F03", "F04", "M01", "M02", "M03", "M04"};
  std::vector<std::string> ids;
  for (int i = 0; i < n_speakers; ++i) {
    if (n_speakers <= 8) {
      ids.emplace_back(kHprc[i]);
    } else {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "S%02d", i + 1);
      ids.emplace_back(buf);
    }
  }
  return ids;
}

SynthCorpus SynthesizeCorpus(const SynthOptions &opts) {
  if (opts.n_speakers < 1 || opts.n_utts < 1 || !(opts.duration_s > 0.0) ||
      opts.audio_rate_hz < 1)
    Fail(ErrorCode::kInvalidArgument, "synth: all arguments must be >= 1");

  const std::vector<Phoneme> inventory = MakeInventory(opts.seed);
  const Matrix mixing = MakeMixing(opts.seed);
  const std::vector<std::string> speaker_ids = SynthSpeakerIds(opts.n_speakers);
  const int frames =
      std::max(1, static_cast<int>(std::lround(opts.duration_s * kEmaRateHz)));
  const long samples = std::lround(opts.duration_s * opts.audio_rate_hz);
  const double dt = 1.0 / kEmaRateHz;
  const double alpha = 1.0 - std::exp(-dt / kDriverTauSec);

  SynthCorpus corpus;
  for (int si = 0; si < opts.n_speakers; ++si) {
    const Speaker spk = MakeSpeaker(opts.seed, si);
    for (int ui = 0; ui < opts.n_utts; ++ui) {
      for (int attempt = 0;; ++attempt) {
        auto rng =
            Rng(opts.seed, 0xC0FFEE + static_cast<uint64_t>(si),
                static_cast<uint64_t>(ui) + (static_cast<uint64_t>(attempt) << 32));

        // Phoneme label per EMA frame.
        std::vector<int> label(frames);
        for (int t = 0; t < frames;) {
          const int len =
              static_cast<int>(std::lround(Uniform(rng, 0.06, 0.18) * kEmaRateHz));
          const int ph = std::uniform_int_distribution<int>(0, kPhonemes - 1)(rng);
          for (int k = 0; k < len && t < frames; ++k) label[t++] = ph;
        }

        // Two cascaded one-pole filters: critically damped, causal.
        Matrix drivers(kSynthDrivers, frames);
        for (int j = 0; j < kSynthDrivers; ++j) {
          double s1 = inventory[label[0]].target[j], s2 = s1;
          for (int t = 0; t < frames; ++t) {
            s1 += alpha * (inventory[label[t]].target[j] - s1);
            s2 += alpha * (s1 - s2);
            drivers(j, t) = s2;
          }
        }

        Utterance utt;
        utt.speaker_id = speaker_ids[si];
        char buf[16];
        std::snprintf(buf, sizeof(buf), "utt%04d", ui + 1);
        utt.utterance_id = buf;
        utt.audio_rate_hz = opts.audio_rate_hz;
        utt.ema.values = Matrix(kNumEmaChannels, frames);
        utt.ema.units = EmaUnits::kMillimeters;
        for (int c = 0; c < kNumEmaChannels; ++c) {
          for (int t = 0; t < frames; ++t) {
            double v = mixing.row(c).dot(drivers.col(t));
            v += 0.15 * std::sin(2.0 * std::numbers::pi * spk.drift_hz[c] * t * dt +
                                 spk.drift_phase[c]);
            utt.ema.values(c, t) = spk.offset_mm[c] + spk.scale_mm[c] * v;
          }
        }

        // Audio: phase-continuous partials of the current phoneme, with a short
        // amplitude crossfade at boundaries, plus a little noise.
        utt.audio.resize(samples);
        std::array<double, kPartials> phase{};
        std::array<double, kPartials> amp{};
        const double amp_alpha = 1.0 - std::exp(-1.0 / (0.005 * opts.audio_rate_hz));
        std::normal_distribution<double> noise(0.0, 0.01);
        for (long n = 0; n < samples; ++n) {
          const int t =
              std::min(frames - 1, static_cast<int>(n * kEmaRateHz / opts.audio_rate_hz));
          const Phoneme &ph = inventory[label[t]];
          double x = 0.0;
          for (int i = 0; i < kPartials; ++i) {
            amp[i] += amp_alpha * (ph.amp[i] - amp[i]);
            phase[i] += 2.0 * std::numbers::pi * ph.freq_hz[i] * spk.pitch_factor /
                        opts.audio_rate_hz;
            if (phase[i] > 2.0 * std::numbers::pi) phase[i] -= 2.0 * std::numbers::pi;
            x += amp[i] * std::sin(phase[i]);
          }
          utt.audio[n] = static_cast<float>(0.1 * x + noise(rng));
        }

        // A draw whose channels do not track their drivers is redrawn. Drivers
        // that stay constant (single-phoneme utterances) are not checked.
        bool dependent = true;
        for (int c = 0; c < kNumEmaChannels && dependent; ++c) {
          const Eigen::VectorXd ch = utt.ema.values.row(c).transpose();
          const Eigen::VectorXd drv = drivers.row(SynthPrimaryDriver(c)).transpose();
          if (ch.size() < 2 || drv.maxCoeff() - drv.minCoeff() < 1e-9) continue;
          dependent = Pcc(std::span<const double>(ch.data(), ch.size()),
                          std::span<const double>(drv.data(), drv.size())) > 0.5;
        }
        if (!dependent) {
          if (attempt + 1 < kMaxAttempts) continue;
          Fail(ErrorCode::kInvalidArgument,
               "synth: " + utt.speaker_id + "/" + utt.utterance_id +
                   " has EMA channels decorrelated from their drivers");
        }

        corpus.utterances.push_back(std::move(utt));
        corpus.drivers.push_back(std::move(drivers));
        break;
      }
    }
  }
  return corpus;
}

std::vector<Utterance> SynthDataset(int n_speakers, int n_utts, double duration_s,
                                    uint64_t seed) {
  SynthOptions opts;
  opts.n_speakers = n_speakers;
  opts.n_utts = n_utts;
  opts.duration_s = duration_s;
  opts.seed = seed;
  return SynthesizeCorpus(opts).utterances;
}

}  // namespace artic
