// src/core/corpus.cc

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

#include "artic/corpus.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "artic/error.h"
#include "json.hpp"

namespace artic {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

static_assert(std::endian::native == std::endian::little,
              "on-disk float32 arrays assume a little-endian host");

std::string ReadBytes(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json ReadJson(const fs::path &path) {
  try {
    return json::parse(ReadBytes(path));
  } catch (const json::exception &e) {
    Fail(ErrorCode::kIo, "malformed JSON in " + path.string() + ": " + e.what());
  }
}

const char *UnitsName(EmaUnits u) {
  return u == EmaUnits::kNormalized ? "normalized" : "mm";
}

}  // namespace

void ValidateUtterance(const Utterance &utt) {
  const double diff = std::abs(utt.audio_seconds() - utt.ema.seconds());
  if (diff > kMaxDurationMismatchSec)
    Fail(ErrorCode::kDurationMismatch,
         "utterance " + utt.speaker_id + "/" + utt.utterance_id +
             ": audio and EMA durations differ by " + std::to_string(diff) + " s");
}

std::vector<std::string> Manifest::Speakers() const {
  std::set<std::string> s;
  for (const auto &e : entries) s.insert(e.speaker);
  return {s.begin(), s.end()};
}

Manifest ReadManifest(const fs::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open manifest " + path.string());
  Manifest m;
  m.root = path.parent_path();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      ManifestEntry e;
      e.speaker = j.at("speaker").get<std::string>();
      e.utt = j.at("utt").get<std::string>();
      e.audio_path = j.at("audio").get<std::string>();
      e.ema_path = j.at("ema").get<std::string>();
      e.meta_path = j.at("meta").get<std::string>();
      m.entries.push_back(std::move(e));
    } catch (const json::exception &ex) {
      Fail(ErrorCode::kMalformedManifest,
           path.string() + ":" + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return m;
}

void WriteManifest(const fs::path &path, const Manifest &manifest) {
  std::string out;
  for (const auto &e : manifest.entries) {
    json j = {{"speaker", e.speaker},
              {"utt", e.utt},
              {"audio", e.audio_path},
              {"ema", e.ema_path},
              {"meta", e.meta_path}};
    out += j.dump() + "\n";
  }
  WriteFileAtomic(path, out);
}

std::vector<float> ReadF32(const fs::path &path) {
  const std::string bytes = ReadBytes(path);
  if (bytes.size() % sizeof(float) != 0)
    Fail(ErrorCode::kIo, path.string() + ": size is not a multiple of 4 bytes");
  std::vector<float> data(bytes.size() / sizeof(float));
  std::memcpy(data.data(), bytes.data(), bytes.size());
  return data;
}

void WriteF32(const fs::path &path, std::span<const float> data) {
  std::string bytes(data.size() * sizeof(float), '\0');
  std::memcpy(bytes.data(), data.data(), bytes.size());
  WriteFileAtomic(path, bytes);
}

void WriteFileAtomic(const fs::path &path, const std::string &bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) Fail(ErrorCode::kIo, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

Utterance LoadUtterance(const Manifest &manifest, const ManifestEntry &entry) {
  const fs::path audio_path = manifest.root / entry.audio_path;
  const fs::path ema_path = manifest.root / entry.ema_path;
  const fs::path meta_path = manifest.root / entry.meta_path;
  for (const fs::path &p : {audio_path, ema_path, meta_path})
    if (!fs::exists(p)) Fail(ErrorCode::kIo, "missing file " + p.string());

  const json meta = ReadJson(meta_path);
  Utterance utt;
  utt.speaker_id = entry.speaker;
  utt.utterance_id = entry.utt;
  try {
    utt.audio_rate_hz = meta.at("sr_audio").get<int>();
    utt.ema.frame_rate_hz = meta.at("sr_ema").get<double>();
    const int frames = meta.at("T").get<int>();
    utt.audio = ReadF32(audio_path);
    const std::vector<float> ema = ReadF32(ema_path);
    if (ema.size() != static_cast<size_t>(kNumEmaChannels) * frames)
      Fail(ErrorCode::kShapeMismatch,
           ema_path.string() + ": expected [18," + std::to_string(frames) + "] floats");
    utt.ema.values =
        Eigen::Map<const MatrixF>(ema.data(), kNumEmaChannels, frames).cast<double>();
    utt.ema.units = meta.value("ema_units", std::string("mm")) == "normalized"
                        ? EmaUnits::kNormalized
                        : EmaUnits::kMillimeters;
  } catch (const json::exception &e) {
    Fail(ErrorCode::kIo, "malformed meta " + meta_path.string() + ": " + e.what());
  }
  ValidateEma(utt.ema);
  return utt;
}

std::vector<Utterance> LoadCorpus(const Manifest &manifest) {
  std::vector<Utterance> out;
  out.reserve(manifest.entries.size());
  for (const auto &e : manifest.entries) out.push_back(LoadUtterance(manifest, e));
  return out;
}

Manifest WriteCorpus(const fs::path &root, std::span<const Utterance> utterances) {
  Manifest m;
  m.root = root;
  for (const Utterance &u : utterances) {
    const fs::path rel = fs::path(u.speaker_id) / u.utterance_id;
    const fs::path dir = root / rel;
    WriteF32(dir / "audio.f32", u.audio);
    const MatrixF ema = u.ema.values.cast<float>();
    WriteF32(dir / "ema.f32", std::span<const float>(ema.data(), ema.size()));
    json meta = {{"sr_audio", u.audio_rate_hz},
                 {"sr_ema", static_cast<int>(std::lround(u.ema.frame_rate_hz))},
                 {"speaker", u.speaker_id},
                 {"utt", u.utterance_id},
                 {"T", u.ema.frames()},
                 {"ema_units", UnitsName(u.ema.units)}};
    WriteFileAtomic(dir / "meta.json", meta.dump(1) + "\n");
    m.entries.push_back({u.speaker_id, u.utterance_id, (rel / "audio.f32").string(),
                         (rel / "ema.f32").string(), (rel / "meta.json").string()});
  }
  WriteManifest(root / "manifest.jsonl", m);
  return m;
}

void WriteNormalizer(const fs::path &path, const NormalizationState &stats) {
  json j = {{"speaker", stats.speaker},
            {"scope", stats.scope},
            {"min", stats.min},
            {"max", stats.max}};
  WriteFileAtomic(path, j.dump(1) + "\n");
}

NormalizationState ReadNormalizer(const fs::path &path) {
  const json j = ReadJson(path);
  NormalizationState s;
  try {
    s.speaker = j.at("speaker").get<std::string>();
    s.scope = j.at("scope").get<std::string>();
    s.min = j.at("min").get<std::array<double, kNumEmaChannels>>();
    s.max = j.at("max").get<std::array<double, kNumEmaChannels>>();
  } catch (const json::exception &e) {
    Fail(ErrorCode::kIo, "malformed normalizer " + path.string() + ": " + e.what());
  }
  return s;
}

namespace {

template <typename T>
T ReadLe(const std::string &b, size_t off) {
  T v;
  std::memcpy(&v, b.data() + off, sizeof(T));
  return v;
}

}  // namespace

WavAudio ReadWav(const fs::path &path) {
  const std::string b = ReadBytes(path);
  if (b.size() < 12 || b.compare(0, 4, "RIFF") != 0 || b.compare(8, 4, "WAVE") != 0)
    Fail(ErrorCode::kIo, path.string() + ": not a RIFF/WAVE file");
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  size_t pos = 12;
  while (pos + 8 <= b.size()) {
    const std::string id = b.substr(pos, 4);
    const uint32_t size = ReadLe<uint32_t>(b, pos + 4);
    const size_t body = pos + 8;
    if (body + size > b.size()) Fail(ErrorCode::kIo, path.string() + ": truncated chunk");
    if (id == "fmt ") {
      format = ReadLe<uint16_t>(b, body);
      channels = ReadLe<uint16_t>(b, body + 2);
      rate = ReadLe<uint32_t>(b, body + 4);
      bits = ReadLe<uint16_t>(b, body + 14);
      if (format == 0xFFFE && size >= 26) format = ReadLe<uint16_t>(b, body + 24);
    } else if (id == "data") {
      if (channels == 0) Fail(ErrorCode::kIo, path.string() + ": data before fmt");
      WavAudio wav;
      wav.rate_hz = static_cast<int>(rate);
      const size_t frame_bytes = channels * (bits / 8);
      const size_t n = size / frame_bytes;
      wav.samples.resize(n);
      for (size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int c = 0; c < channels; ++c) {
          const size_t off = body + i * frame_bytes + c * (bits / 8);
          if (format == 1 && bits == 16)
            acc += ReadLe<int16_t>(b, off) / 32768.0;
          else if (format == 3 && bits == 32)
            acc += ReadLe<float>(b, off);
          else
            Fail(ErrorCode::kIo, path.string() + ": unsupported WAV encoding (format " +
                                     std::to_string(format) + ", " +
                                     std::to_string(bits) + " bits)");
        }
        wav.samples[i] = static_cast<float>(acc / channels);
      }
      return wav;
    }
    pos = body + size + (size & 1);
  }
  Fail(ErrorCode::kIo, path.string() + ": no data chunk");
}

void WriteWav(const fs::path &path, std::span<const float> samples, int rate_hz) {
  auto put = [](std::string &s, auto v) {
    s.append(reinterpret_cast<const char *>(&v), sizeof(v));
  };
  const uint32_t data_bytes = static_cast<uint32_t>(samples.size() * 4);
  std::string b = "RIFF";
  put(b, uint32_t{36 + data_bytes});
  b += "WAVEfmt ";
  put(b, uint32_t{16});
  put(b, uint16_t{3});
  put(b, uint16_t{1});
  put(b, static_cast<uint32_t>(rate_hz));
  put(b, static_cast<uint32_t>(rate_hz * 4));
  put(b, uint16_t{4});
  put(b, uint16_t{32});
  b += "data";
  put(b, data_bytes);
  for (float s : samples) put(b, s);
  WriteFileAtomic(path, b);
}

}  // namespace artic
