// tests/features_test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "artic/features.h"

#include <cmath>
#include <cstring>
#include <random>

#include "artic/synth.h"
#include "doctest.h"
#include "test_util.h"

using namespace artic;

namespace {

Utterance Silence(double seconds) {
  Utterance u;
  u.speaker_id = "F01";
  u.utterance_id = "sil";
  u.audio.assign(static_cast<size_t>(seconds * 16000), 0.0f);
  return u;
}

FeatureSequence Ramp(int frames, int dim, double rate) {
  FeatureSequence f;
  f.frame_rate_hz = rate;
  f.backend = "test";
  f.values = MatrixF(frames, dim);
  for (int t = 0; t < frames; ++t)
    for (int d = 0; d < dim; ++d)
      f.values(t, d) = static_cast<float>(std::sin(0.3 * t + d));
  return f;
}

}  // namespace

TEST_CASE("framing arithmetic: 10 ms hop with centred frames") {
  // Oracle: frame k exists iff its hop centre k*160 + 80 lies within the signal.
  for (long n : {400L, 401L, 16000L, 32000L, 32079L, 32080L, 44100L}) {
    int oracle = 0;
    for (long k = 0; k * 160 + 80 <= n; ++k) ++oracle;
    CHECK(NumFrames(n) == oracle);
  }
  CHECK(NumFrames(32000) == 200);
}

TEST_CASE("stub backend: 2 s of audio gives 200 frames of 1024 dims, deterministically") {
  const Utterance u = SynthDataset(1, 1, 2.0, 3).front();
  const FeatureBackendSpec spec = DefaultBackendSpec(FeatureBackend::kStub);
  const FeatureSequence a = ExtractFeatures(spec, u);
  CHECK(a.frames() == 200);
  CHECK(a.dim() == 1024);
  CHECK(a.frame_rate_hz == 100.0);
  CHECK(a.backend == "stub");
  CHECK(a.values.allFinite());
  const FeatureSequence b = ExtractFeatures(spec, u);
  CHECK(a.values == b.values);
  // Not degenerate: frames differ across the utterance.
  CHECK((a.values.row(20) - a.values.row(120)).norm() > 1e-3);
}

TEST_CASE("mfcc backend: 39 dims at 100 Hz, finite on silence") {
  const FeatureSequence f =
      ExtractFeatures(DefaultBackendSpec(FeatureBackend::kMfcc), Silence(1.0));
  CHECK(f.dim() == 39);
  CHECK(f.frames() == 100);
  CHECK(f.values.allFinite());
  const MatrixF no_dither = Mfcc(Silence(0.5).audio, 0.0);
  CHECK(no_dither.allFinite());
}

TEST_CASE("feature extraction errors") {
  FeatureBackendSpec stub = DefaultBackendSpec(FeatureBackend::kStub);
  CHECK_ERROR_CODE(ExtractFeatures(stub, Silence(0.01)), ErrorCode::kAudioTooShort);

  TempDir dir;
  FeatureBackendSpec ssl = DefaultBackendSpec(FeatureBackend::kPrecomputedSsl);
  ssl.cache_root = dir.path();
  CHECK_ERROR_CODE(ExtractFeatures(ssl, Silence(1.0)), ErrorCode::kMissingCache);

  CHECK_ERROR_CODE(ParseBackend("wavlm"), ErrorCode::kInvalidArgument);
  CHECK(ParseBackend("precomputed_ssl") == FeatureBackend::kPrecomputedSsl);
}

TEST_CASE("precomputed_ssl reads 1024-dim 50 Hz features from the cache") {
  TempDir dir;
  FeatureSequence f = Ramp(100, 1024, 50.0);
  f.backend = "precomputed_ssl";
  CacheWrite(dir.path(), "F01", "sil", f);
  FeatureBackendSpec ssl = DefaultBackendSpec(FeatureBackend::kPrecomputedSsl);
  ssl.cache_root = dir.path();
  const FeatureSequence got = ExtractFeatures(ssl, Silence(2.0));
  CHECK(got.values == f.values);
  CHECK(got.frame_rate_hz == 50.0);

  FeatureSequence small = Ramp(10, 8, 50.0);
  small.backend = "precomputed_ssl";
  CacheWrite(dir.path(), "F01", "sil", small);
  CHECK_ERROR_CODE(ExtractFeatures(ssl, Silence(2.0)), ErrorCode::kDimMismatch);
}

TEST_CASE("cache round-trip is bit-identical and keeps metadata") {
  TempDir dir;
  FeatureSequence f = Ramp(37, 5, 50.0);
  f.values(3, 2) = -0.0f;
  f.values(4, 1) = 1e-38f;
  CacheWrite(dir.path(), "M01", "utt0003", f);
  CHECK(CacheHas(dir.path(), "test", "M01", "utt0003"));
  CHECK(std::filesystem::exists(dir.path() / "test" / "M01" / "utt0003.json"));
  const FeatureSequence g = CacheRead(dir.path(), "test", "M01", "utt0003");
  CHECK(std::memcmp(g.values.data(), f.values.data(), f.values.size() * 4) == 0);
  CHECK(g.frame_rate_hz == 50.0);
  CHECK(g.backend == "test");
  CHECK_ERROR_CODE(CacheRead(dir.path(), "test", "M01", "nope"),
                   ErrorCode::kMissingCache);
}

TEST_CASE("alignment to the EMA rate") {
  const FeatureSequence f50 = Ramp(100, 4, 50.0);
  const FeatureSequence up = AlignToEmaRate(f50, 100.0, 200);
  CHECK(up.frames() == 200);
  CHECK(up.frame_rate_hz == 100.0);
  for (int j = 0; j < 200; j += 2) CHECK(up.values.row(j) == f50.values.row(j / 2));
  for (int j = 1; j < 199; j += 2) {
    const Eigen::RowVectorXf mid =
        0.5f * (f50.values.row(j / 2) + f50.values.row(j / 2 + 1));
    CHECK((up.values.row(j) - mid).cwiseAbs().maxCoeff() < 1e-6);
  }

  const FeatureSequence same = AlignToEmaRate(Ramp(50, 3, 100.0), 100.0, 50);
  CHECK(same.values == Ramp(50, 3, 100.0).values);

  const FeatureSequence padded = AlignToEmaRate(f50, 100.0, 230);
  CHECK(padded.values.bottomRows(30).isZero());
  CHECK(AlignToEmaRate(f50, 100.0, 150).frames() == 150);

  FeatureSequence flat = Ramp(20, 3, 50.0);
  flat.values.setConstant(1.5f);
  CHECK((AlignToEmaRate(flat, 100.0, 40).values.array() == 1.5f).all());
}

TEST_CASE("linear interpolation never overshoots per-dimension bounds") {
  std::mt19937_64 rng(1);
  std::normal_distribution<float> g(0.0f, 1.0f);
  FeatureSequence f;
  f.frame_rate_hz = 50.0;
  f.values = MatrixF(73, 6);
  for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values.data()[i] = g(rng);
  const FeatureSequence up = AlignToEmaRate(f, 100.0, 146);
  for (int d = 0; d < 6; ++d) {
    CHECK(up.values.col(d).maxCoeff() <= f.values.col(d).maxCoeff());
    CHECK(up.values.col(d).minCoeff() >= f.values.col(d).minCoeff());
  }
}
