// src/core/features.cc

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

#include "artic/features.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

#include "artic/error.h"
#include "json.hpp"

namespace artic {

namespace fs = std::filesystem;

namespace {

constexpr int kFftSize = 512;
constexpr int kMfccBands = 40;
constexpr int kStubBands = 80;
constexpr int kCepstra = 13;
constexpr double kLogFloor = 1e-10;

double HzToMel(double hz) { return 1127.0 * std::log1p(hz / 700.0); }

// Triangular filters on the mel scale, [bands, kFftSize/2 + 1].
Matrix MelFilterbank(int bands, double low_hz, double high_hz) {
  const int bins = kFftSize / 2 + 1;
  Matrix fb = Matrix::Zero(bands, bins);
  const double mlo = HzToMel(low_hz), mhi = HzToMel(high_hz);
  const double step = (mhi - mlo) / (bands + 1);
  for (int b = 0; b < bands; ++b) {
    const double left = mlo + b * step, center = left + step, right = center + step;
    for (int k = 0; k < bins; ++k) {
      const double mel = HzToMel(k * static_cast<double>(kModelAudioRateHz) / kFftSize);
      if (mel > left && mel < right)
        fb(b, k) = mel <= center ? (mel - left) / step : (right - mel) / step;
    }
  }
  return fb;
}

std::mutex &PlannerMutex() {
  static std::mutex m;
  return m;
}

// Power spectra of the mirrored-edge framing, [frames, kFftSize/2 + 1].
Matrix PowerSpectrogram(std::span<const float> audio, bool preemphasis) {
  const long n = static_cast<long>(audio.size());
  if (n < kFrameLength)
    Fail(ErrorCode::kAudioTooShort, "features: " + std::to_string(n) +
                                        " samples is shorter than one analysis window (" +
                                        std::to_string(kFrameLength) + ")");
  const int frames = NumFrames(n);
  const int bins = kFftSize / 2 + 1;
  Matrix power(frames, bins);

  std::vector<double> window(kFrameLength);
  for (int i = 0; i < kFrameLength; ++i)
    window[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (kFrameLength - 1));

  double *in = fftw_alloc_real(kFftSize);
  fftw_complex *out = fftw_alloc_complex(bins);
  fftw_plan plan;
  {
    // FFTW planning is not thread-safe; execution is.
    std::lock_guard<std::mutex> lock(PlannerMutex());
    plan = fftw_plan_dft_r2c_1d(kFftSize, in, out, FFTW_ESTIMATE);
  }
  std::vector<double> frame(kFrameLength);
  for (int f = 0; f < frames; ++f) {
    const long start =
        static_cast<long>(f) * kFrameShift + kFrameShift / 2 - kFrameLength / 2;
    for (int i = 0; i < kFrameLength; ++i) {
      long idx = start + i;
      if (idx < 0) idx = -idx - 1;
      if (idx >= n) idx = 2 * n - idx - 1;
      frame[i] = audio[idx];
    }
    double mean = 0.0;
    for (double v : frame) mean += v;
    mean /= kFrameLength;
    for (double &v : frame) v -= mean;
    if (preemphasis) {
      for (int i = kFrameLength - 1; i > 0; --i) frame[i] -= 0.97 * frame[i - 1];
      frame[0] -= 0.97 * frame[0];
    }
    for (int i = 0; i < kFftSize; ++i)
      in[i] = i < kFrameLength ? frame[i] * window[i] : 0.0;
    fftw_execute(plan);
    for (int k = 0; k < bins; ++k)
      power(f, k) = out[k][0] * out[k][0] + out[k][1] * out[k][1];
  }
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return power;
}

Matrix LogMel(std::span<const float> audio, int bands, bool preemphasis) {
  const Matrix power = PowerSpectrogram(audio, preemphasis);
  const Matrix fb = MelFilterbank(bands, 20.0, 7600.0);
  Matrix mel = power * fb.transpose();
  return mel.unaryExpr([](double e) { return std::log(std::max(e, kLogFloor)); });
}

Matrix Deltas(const Matrix &x) {
  const int frames = static_cast<int>(x.rows());
  Matrix d(x.rows(), x.cols());
  for (int t = 0; t < frames; ++t) {
    auto at = [&](int i) { return x.row(std::clamp(i, 0, frames - 1)); };
    d.row(t) = (1.0 * (at(t + 1) - at(t - 1)) + 2.0 * (at(t + 2) - at(t - 2))) / 10.0;
  }
  return d;
}

// Fixed Gaussian projection for the stub backend, [bands, dim].
const Matrix &StubProjection(uint64_t seed, int dim) {
  static std::mutex mutex;
  static std::map<std::pair<uint64_t, int>, Matrix> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({seed, dim});
  if (it != cache.end()) return it->second;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(
      0.0, 1.0 / std::sqrt(static_cast<double>(kStubBands)));
  Matrix w(kStubBands, dim);
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = normal(rng);
  return cache.emplace(std::make_pair(seed, dim), std::move(w)).first->second;
}

std::string ReadText(const fs::path &p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FeatureBackendSpec DefaultBackendSpec(FeatureBackend backend) {
  FeatureBackendSpec spec;
  spec.backend = backend;
  switch (backend) {
    case FeatureBackend::kPrecomputedSsl:
      spec.dim = 1024;
      spec.native_rate_hz = 50.0;
      break;
    case FeatureBackend::kMfcc:
      spec.dim = 3 * kCepstra;
      spec.native_rate_hz = 100.0;
      break;
    case FeatureBackend::kStub:
      spec.dim = 1024;
      spec.native_rate_hz = 100.0;
      break;
  }
  return spec;
}

FeatureBackend ParseBackend(const std::string &name) {
  if (name == "precomputed_ssl") return FeatureBackend::kPrecomputedSsl;
  if (name == "mfcc") return FeatureBackend::kMfcc;
  if (name == "stub") return FeatureBackend::kStub;
  Fail(ErrorCode::kInvalidArgument,
       "unknown feature backend '" + name + "' (expected precomputed_ssl, mfcc or stub)");
}

std::string BackendName(FeatureBackend backend) {
  switch (backend) {
    case FeatureBackend::kPrecomputedSsl:
      return "precomputed_ssl";
    case FeatureBackend::kMfcc:
      return "mfcc";
    case FeatureBackend::kStub:
      return "stub";
  }
  return "unknown";
}

int NumFrames(long num_samples) {
  return static_cast<int>((num_samples + kFrameShift / 2) / kFrameShift);
}

MatrixF LogMelSpectrogram(std::span<const float> audio, int bands) {
  return LogMel(audio, bands, false).cast<float>();
}

MatrixF Mfcc(std::span<const float> audio, double dither) {
  std::vector<float> dithered(audio.begin(), audio.end());
  if (dither > 0.0) {
    std::mt19937_64 rng(0xD17E5);
    std::normal_distribution<double> normal(0.0, dither);
    for (float &s : dithered) s = static_cast<float>(s + normal(rng));
  }
  const Matrix logmel = LogMel(dithered, kMfccBands, true);
  Matrix dct(kCepstra, kMfccBands);
  for (int k = 0; k < kCepstra; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / kMfccBands);
    for (int b = 0; b < kMfccBands; ++b)
      dct(k, b) = scale * std::cos(std::numbers::pi * k * (b + 0.5) / kMfccBands);
  }
  const Matrix ceps = logmel * dct.transpose();
  const Matrix d1 = Deltas(ceps);
  const Matrix d2 = Deltas(d1);
  Matrix out(ceps.rows(), 3 * kCepstra);
  out << ceps, d1, d2;
  return out.cast<float>();
}

FeatureSequence ExtractFeatures(const FeatureBackendSpec &spec, const Utterance &utt) {
  if (spec.dim <= 0 || !(spec.native_rate_hz > 0.0))
    Fail(ErrorCode::kInvalidArgument, "features: backend dim and rate must be positive");
  FeatureSequence feat;
  feat.backend = BackendName(spec.backend);
  feat.frame_rate_hz = spec.native_rate_hz;
  switch (spec.backend) {
    case FeatureBackend::kPrecomputedSsl: {
      feat = CacheRead(spec.cache_root, feat.backend, utt.speaker_id, utt.utterance_id);
      if (feat.dim() != spec.dim)
        Fail(ErrorCode::kDimMismatch, "precomputed_ssl: cached dim " +
                                          std::to_string(feat.dim()) + " != expected " +
                                          std::to_string(spec.dim));
      return feat;
    }
    case FeatureBackend::kMfcc:
    case FeatureBackend::kStub:
      break;
  }
  if (utt.audio_rate_hz != kModelAudioRateHz)
    Fail(ErrorCode::kInvalidArgument,
         "features: audio must be 16 kHz, got " + std::to_string(utt.audio_rate_hz));
  if (spec.backend == FeatureBackend::kMfcc) {
    if (spec.dim != 3 * kCepstra) Fail(ErrorCode::kDimMismatch, "mfcc: dim must be 39");
    feat.values = Mfcc(utt.audio);
  } else {
    const Matrix logmel = LogMel(utt.audio, kStubBands, false);
    feat.values = (logmel * StubProjection(spec.stub_seed, spec.dim)).cast<float>();
  }
  return feat;
}

FeatureSequence AlignToEmaRate(const FeatureSequence &feat, double target_hz,
                               int target_frames) {
  if (feat.frames() < 1 || !(feat.frame_rate_hz > 0.0))
    Fail(ErrorCode::kInvalidArgument, "align: empty feature sequence");
  const double step = feat.frame_rate_hz / target_hz;
  const long natural = std::lround(feat.frames() * target_hz / feat.frame_rate_hz);
  FeatureSequence out;
  out.backend = feat.backend;
  out.frame_rate_hz = target_hz;
  out.values = MatrixF::Zero(target_frames, feat.dim());
  const int last = feat.frames() - 1;
  for (int j = 0; j < target_frames && j < natural; ++j) {
    const double pos = j * step;
    const int i0 = std::min(static_cast<int>(std::floor(pos)), last);
    const int i1 = std::min(i0 + 1, last);
    const float frac = static_cast<float>(pos - i0);
    if (frac == 0.0f || i0 == i1)
      out.values.row(j) = feat.values.row(i0);
    else
      out.values.row(j) =
          (1.0f - frac) * feat.values.row(i0) + frac * feat.values.row(i1);
  }
  return out;
}

fs::path CachePath(const fs::path &cache_root, const std::string &backend,
                   const std::string &speaker, const std::string &utt) {
  return cache_root / backend / speaker / (utt + ".f32");
}

void CacheWrite(const fs::path &cache_root, const std::string &speaker,
                const std::string &utt, const FeatureSequence &feat) {
  const fs::path data = CachePath(cache_root, feat.backend, speaker, utt);
  fs::path side = data;
  side.replace_extension(".json");
  WriteF32(data, std::span<const float>(feat.values.data(), feat.values.size()));
  const nlohmann::json j = {{"dim", feat.dim()},
                            {"rate_hz", feat.frame_rate_hz},
                            {"backend", feat.backend},
                            {"frames", feat.frames()}};
  WriteFileAtomic(side, j.dump() + "\n");
}

bool CacheHas(const fs::path &cache_root, const std::string &backend,
              const std::string &speaker, const std::string &utt) {
  fs::path data = CachePath(cache_root, backend, speaker, utt);
  fs::path side = data;
  side.replace_extension(".json");
  return fs::exists(data) && fs::exists(side);
}

FeatureSequence CacheRead(const fs::path &cache_root, const std::string &backend,
                          const std::string &speaker, const std::string &utt) {
  const fs::path data = CachePath(cache_root, backend, speaker, utt);
  fs::path side = data;
  side.replace_extension(".json");
  if (!fs::exists(data) || !fs::exists(side))
    Fail(ErrorCode::kMissingCache,
         "no cached " + backend + " features for " + speaker + "/" + utt + " (expected " +
             data.string() + "); populate the cache with `artic features --backend " +
             backend + "` or an external extractor");
  FeatureSequence feat;
  int dim = 0;
  try {
    const nlohmann::json j = nlohmann::json::parse(ReadText(side));
    dim = j.at("dim").get<int>();
    feat.frame_rate_hz = j.at("rate_hz").get<double>();
    feat.backend = j.at("backend").get<std::string>();
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorCode::kIo, "malformed cache sidecar " + side.string() + ": " + e.what());
  }
  const std::vector<float> raw = ReadF32(data);
  if (dim <= 0 || raw.size() % dim != 0 || raw.empty())
    Fail(ErrorCode::kIo,
         data.string() + ": size inconsistent with dim " + std::to_string(dim));
  feat.values = Eigen::Map<const MatrixF>(raw.data(), raw.size() / dim, dim);
  return feat;
}

}  // namespace artic
