// tools/artic.cc

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

// Command-line driver: synth, preprocess, features, train, eval, invert, ablate.
//
// Errors are reported on one stderr line as "ERROR[E_CODE]: message" and the
// process exits with artic::ErrorExitStatus(code); usage errors use E_USAGE
// and exit 2.

#include <torch/torch.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "artic/config.h"
#include "artic/corpus.h"
#include "artic/error.h"
#include "artic/features.h"
#include "artic/metrics.h"
#include "artic/nn/ablation.h"
#include "artic/nn/checkpoint.h"
#include "artic/nn/evaluate.h"
#include "artic/nn/training.h"
#include "artic/preprocess.h"
#include "artic/resample.h"
#include "artic/split.h"
#include "artic/synth.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace artic {
namespace {

constexpr char kCacheEnv[] = "ARTIC_CACHE";
constexpr char kSnapshotName[] = "config.resolved.json";

struct ConfigFlags {
  std::string path;
  std::string preset = "desk";
  std::vector<std::string> overrides;
};

void AddConfigFlags(CLI::App *cmd, ConfigFlags *flags) {
  cmd->add_option("--config", flags->path, "JSON run config (defaults when omitted)");
  cmd->add_option("--set", flags->overrides, "dotted.key=value override, repeatable");
}

void AddPresetFlag(CLI::App *cmd, ConfigFlags *flags) {
  cmd->add_option("--preset", flags->preset, "starting point without --config")
      ->check(CLI::IsMember({"desk", "full"}));
}

RunConfig ResolveConfig(const ConfigFlags &flags, RunConfig base = {}) {
  RunConfig c = flags.path.empty() ? base : LoadRunConfig(flags.path);
  for (const std::string &o : flags.overrides) ApplyOverride(&c, o);
  Validate(c);
  return c;
}

RunConfig Preset(const ConfigFlags &flags) {
  return flags.preset == "full" ? FullScaleConfig() : DeskConfig();
}

void WriteSnapshot(const fs::path &dir, const RunConfig &config) {
  WriteFileAtomic(dir / kSnapshotName, ToJson(config).dump(2) + "\n");
}

// --cache, then features.cache, then $ARTIC_CACHE.
fs::path CacheRoot(const std::string &flag, const RunConfig &config) {
  if (!flag.empty()) return flag;
  if (!config.features.cache.empty()) return config.features.cache;
  if (const char *env = std::getenv(kCacheEnv)) return env;
  return {};
}

FeatureBackendSpec Backend(const RunConfig &config, const fs::path &cache) {
  FeatureBackendSpec spec = DefaultBackendSpec(ParseBackend(config.features.backend));
  spec.cache_root = cache;
  spec.stub_seed = config.features.stub_seed;
  return spec;
}

void ToModelRate(Utterance *u) {
  if (u->audio_rate_hz == kModelAudioRateHz) return;
  std::cerr << "notice: resampling " << u->speaker_id << "/" << u->utterance_id
            << " from " << u->audio_rate_hz << " Hz to " << kModelAudioRateHz << " Hz\n";
  u->audio = ResampleAudio(u->audio, u->audio_rate_hz, kModelAudioRateHz);
  u->audio_rate_hz = kModelAudioRateHz;
}

// A preprocessed corpus as written by `artic preprocess` (stats/<spk>.json
// beside the manifest), or a raw one, preprocessed in memory.
PreprocessedCorpus LoadPreprocessed(const fs::path &manifest_path, int lowess_window) {
  const Manifest m = ReadManifest(manifest_path);
  std::vector<Utterance> utts = LoadCorpus(m);
  bool normalized = !utts.empty();
  for (const Utterance &u : utts) normalized &= u.ema.units == EmaUnits::kNormalized;
  if (!normalized) {
    PreprocessOptions opts;
    opts.lowess_window = lowess_window;
    return Preprocess(utts, opts);
  }
  PreprocessedCorpus p;
  for (const std::string &spk : m.Speakers())
    p.stats[spk] = ReadNormalizer(m.root / "stats" / (spk + ".json"));
  for (Utterance &u : utts) ToModelRate(&u);
  p.utterances = std::move(utts);
  return p;
}

void WriteReport(const fs::path &dir, const EvalReport &r, const std::string &name) {
  WriteFileAtomic(dir / "report.json", ReportToJson(r) + "\n");
  WriteFileAtomic(dir / "report.txt", FormatReportTable(r, name));
  WriteFileAtomic(dir / "per_channel.csv", PerChannelCsv(r));
  std::cout << FormatReportTable(r, name);
}

// ----------------------------------------------------------------------------

struct SynthArgs {
  std::string out;
  int speakers = 2, utts = 4, audio_rate = kModelAudioRateHz;
  double duration = 2.0;
  uint64_t seed = 7;
};

void CmdSynth(const SynthArgs &a) {
  SynthOptions opts;
  opts.n_speakers = a.speakers;
  opts.n_utts = a.utts;
  opts.duration_s = a.duration;
  opts.seed = a.seed;
  opts.audio_rate_hz = a.audio_rate;
  const SynthCorpus corpus = SynthesizeCorpus(opts);
  const Manifest m = WriteCorpus(a.out, corpus.utterances);
  for (const Utterance &u : corpus.utterances)
    WriteWav(fs::path(a.out) / u.speaker_id / u.utterance_id / "audio.wav", u.audio,
             u.audio_rate_hz);
  json snap = {{"speakers", a.speakers},
               {"utts", a.utts},
               {"duration_s", a.duration},
               {"seed", a.seed},
               {"audio_rate_hz", a.audio_rate}};
  WriteFileAtomic(fs::path(a.out) / "synth.json", snap.dump(2) + "\n");
  std::cout << "wrote " << m.entries.size() << " utterances to "
            << (fs::path(a.out) / "manifest.jsonl").string() << "\n";
}

struct PreprocessArgs {
  std::string manifest, out;
  ConfigFlags config;
};

void CmdPreprocess(const PreprocessArgs &a) {
  const RunConfig config = ResolveConfig(a.config);
  const Manifest m = ReadManifest(a.manifest);
  PreprocessOptions opts;
  opts.lowess_window = config.data.lowess_window;
  const PreprocessedCorpus p = Preprocess(LoadCorpus(m), opts);
  WriteCorpus(a.out, p.utterances);
  for (const auto &[spk, stats] : p.stats)
    WriteNormalizer(fs::path(a.out) / "stats" / (spk + ".json"), stats);
  WriteSnapshot(a.out, config);
  std::cout << "preprocessed " << p.utterances.size() << " utterances, " << p.stats.size()
            << " speakers -> " << a.out << "\n";
}

struct FeaturesArgs {
  std::string manifest, cache, backend;
  ConfigFlags config;
};

void CmdFeatures(const FeaturesArgs &a) {
  RunConfig config = ResolveConfig(a.config);
  if (!a.backend.empty()) config.features.backend = a.backend;
  const fs::path cache = CacheRoot(a.cache, config);
  if (cache.empty())
    Fail(ErrorCode::kInvalidArgument,
         std::string("no cache root: pass --cache, set features.cache or $") + kCacheEnv);
  config.features.cache = cache.string();
  const FeatureBackendSpec spec = Backend(config, cache);
  const std::string name = BackendName(spec.backend);
  const Manifest m = ReadManifest(a.manifest);
  int computed = 0, reused = 0;
  for (const ManifestEntry &e : m.entries) {
    const fs::path audio = m.root / e.audio_path;
    const fs::path data = CachePath(cache, name, e.speaker, e.utt);
    // Reuse entries that are at least as new as their audio.
    if (CacheHas(cache, name, e.speaker, e.utt) && fs::exists(audio) &&
        fs::last_write_time(data) >= fs::last_write_time(audio)) {
      ++reused;
      continue;
    }
    if (spec.backend == FeatureBackend::kPrecomputedSsl) {
      CacheRead(cache, name, e.speaker, e.utt);  // throws the actionable kMissingCache
    }
    Utterance u = LoadUtterance(m, e);
    ToModelRate(&u);
    CacheWrite(cache, e.speaker, e.utt, ExtractFeatures(spec, u));
    ++computed;
  }
  WriteSnapshot(cache, config);
  std::cout << name << ": computed " << computed << ", cached " << reused << "\n";
}

struct TrainArgs {
  std::string manifest, out, held_out, cache;
  bool resume = false;
  ConfigFlags config;
};

void CmdTrain(const TrainArgs &a) {
  RunConfig config = ResolveConfig(a.config, Preset(a.config));
  if (!a.held_out.empty()) config.data.held_out = a.held_out;
  const fs::path cache = CacheRoot(a.cache, config);
  config.features.cache = cache.string();
  const PreprocessedCorpus p = LoadPreprocessed(a.manifest, config.data.lowess_window);

  std::vector<Utterance> train_utts, test_utts;
  if (config.data.held_out.empty()) {
    train_utts = p.utterances;
  } else {
    std::vector<UtteranceKey> keys;
    for (const Utterance &u : p.utterances)
      keys.push_back({u.speaker_id, u.utterance_id});
    const LosoSplit split =
        MakeLosoSplit(keys, config.data.held_out, config.training.seed);
    for (size_t i : split.train) train_utts.push_back(p.utterances[i]);
    for (size_t i : split.test) test_utts.push_back(p.utterances[i]);
  }
  const FeatureBackendSpec backend = Backend(config, cache);
  const std::vector<TrainItem> train =
      BuildItems(train_utts, backend, config.training.channels);
  EvalSet val;
  val.items = BuildItems(test_utts, backend, config.training.channels);
  val.stats = p.stats;
  val.channels = config.training.channels;

  fs::create_directories(a.out);
  WriteSnapshot(a.out, config);
  Trainer trainer(config);
  const fs::path last = fs::path(a.out) / "last.ckpt";
  if (a.resume && fs::exists(last)) {
    const Checkpoint ckpt = LoadCheckpoint(last);
    // Only the epoch budget may change between runs.
    RunConfig stored = CheckpointConfig(ckpt);
    stored.training.max_epochs = config.training.max_epochs;
    if (ConfigHash(stored) != ConfigHash(config))
      Fail(ErrorCode::kCheckpoint,
           last.string() +
               " was written with a different config; resume needs the same one");
    trainer.Restore(ckpt);
    std::cout << "resuming at epoch " << trainer.epoch() << "\n";
  }
  const std::vector<EpochLog> history = trainer.Fit(train, &val, a.out);
  for (const EpochLog &l : history)
    std::cout << "epoch " << l.epoch << " recon " << l.recon << " adv_d " << l.adv_d
              << " val_pcc " << l.val_pcc << "\n";
  if (!val.items.empty())
    WriteReport(a.out, EvaluateSpeaker(trainer.inverter(), val),
                "held-out " + a.held_out);
}

struct EvalArgs {
  std::string checkpoint, manifest, out, cache;
  std::vector<std::string> speakers;
  bool xz = false;
};

void CmdEval(const EvalArgs &a) {
  const Checkpoint ckpt = LoadCheckpoint(a.checkpoint);
  RunConfig config = CheckpointConfig(ckpt);
  config.features.cache = CacheRoot(a.cache, config).string();
  InverterModel model = LoadInverter(ckpt);
  const PreprocessedCorpus p = LoadPreprocessed(a.manifest, config.data.lowess_window);
  std::set<std::string> wanted(a.speakers.begin(), a.speakers.end());
  std::vector<Utterance> utts;
  for (const Utterance &u : p.utterances)
    if (wanted.empty() || wanted.count(u.speaker_id)) utts.push_back(u);
  if (utts.empty())
    Fail(ErrorCode::kUnknownSpeaker, "eval: no utterances for the speakers given");

  EvalSet set;
  set.channels = config.training.channels;
  set.items = BuildItems(utts, Backend(config, config.features.cache), set.channels);
  set.stats = p.stats;
  EvalReport report;
  if (a.xz && set.channels == "xyz") {
    // Score the X/Z rows of a full-channel model.
    const std::vector<int> xz = XzChannelIndices();
    std::vector<EvalItem> items = PredictAll(model, set);
    std::vector<std::string> names;
    for (int c : xz) names.push_back(ChannelName(c));
    for (EvalItem &e : items) {
      Matrix pred(xz.size(), e.predicted.frames()), ref(xz.size(), e.reference.frames());
      for (size_t i = 0; i < xz.size(); ++i) {
        pred.row(i) = e.predicted.values.row(xz[i]);
        ref.row(i) = e.reference.values.row(xz[i]);
      }
      e.predicted.values = pred;
      e.reference.values = ref;
      e.stats_channels = xz;
    }
    report = Aggregate(items, names);
  } else {
    report = EvaluateSpeaker(model, set);
  }
  fs::create_directories(a.out);
  WriteSnapshot(a.out, config);
  WriteReport(a.out, report, fs::path(a.checkpoint).stem().string());
}

struct InvertArgs {
  std::string checkpoint, wav, out, stats, cache;
  std::string speaker = "invert";
};

void CmdInvert(const InvertArgs &a) {
  const Checkpoint ckpt = LoadCheckpoint(a.checkpoint);
  RunConfig config = CheckpointConfig(ckpt);
  config.features.cache = CacheRoot(a.cache, config).string();
  InverterModel model = LoadInverter(ckpt);
  const WavAudio wav = ReadWav(a.wav);

  Utterance u;
  u.speaker_id = a.speaker;
  u.utterance_id = fs::path(a.wav).stem().string();
  u.audio = wav.samples;
  u.audio_rate_hz = wav.rate_hz;
  ToModelRate(&u);
  const int frames = NumFrames(static_cast<long>(u.audio.size()));
  const FeatureSequence feat =
      AlignToEmaRate(ExtractFeatures(Backend(config, config.features.cache), u),
                     config.mdpd.ema_rate_hz, frames);
  EmaRecording ema = TensorToEma(Predict(model, FeaturesToTensor(feat)));
  ema.frame_rate_hz = config.mdpd.ema_rate_hz;

  const std::vector<int> channels = ChannelSubset(config.training.channels);
  if (!a.stats.empty()) {
    const NormalizationState s = ReadNormalizer(a.stats);
    for (size_t i = 0; i < channels.size(); ++i) {
      const int c = channels[i];
      ema.values.row(i) =
          (ema.values.row(i).array() * (s.max[c] - s.min[c]) + s.min[c]).matrix();
    }
    ema.units = EmaUnits::kMillimeters;
  }
  fs::create_directories(a.out);
  const MatrixF values = ema.values.cast<float>();
  WriteF32(fs::path(a.out) / "ema.f32",
           std::span<const float>(values.data(), values.size()));
  json names = json::array();
  for (int c : channels) names.push_back(ChannelName(c));
  const json meta = {
      {"sr_ema", ema.frame_rate_hz},
      {"T", ema.frames()},
      {"channels", names},
      {"layout", "frame-major [T][C] float32"},
      {"ema_units", ema.units == EmaUnits::kMillimeters ? "mm" : "normalized"},
      {"source", a.wav}};
  WriteFileAtomic(fs::path(a.out) / "meta.json", meta.dump(1) + "\n");
  WriteSnapshot(a.out, config);
  std::cout << "wrote [" << channels.size() << ", " << ema.frames() << "] at "
            << ema.frame_rate_hz << " Hz to " << a.out << "\n";
}

struct AblateArgs {
  std::string variant, manifest, out, held_out, cache;
  bool params_only = false;
  ConfigFlags config;
};

void CmdAblate(const AblateArgs &a) {
  RunConfig base = ResolveConfig(a.config, Preset(a.config));
  const RunConfig config = ApplyAblation(base, a.variant);
  Validate(config);
  const int64_t params = InverterParameterCount(config.inverter);
  std::cout << "variant " << a.variant << " params " << params << "\n";
  if (a.params_only) return;
  if (a.manifest.empty() || a.held_out.empty() || a.out.empty())
    Fail(ErrorCode::kInvalidArgument,
         "ablate: --manifest, --held-out and --out are required");
  base.features.cache = CacheRoot(a.cache, base).string();
  const PreprocessedCorpus p = LoadPreprocessed(a.manifest, base.data.lowess_window);
  fs::create_directories(a.out);
  WriteSnapshot(a.out, config);
  const AblationResult r =
      RunAblation(a.variant, base, p.utterances, p.stats, a.held_out, a.out);
  json j = json::parse(ReportToJson(r.report));
  j["variant"] = a.variant;
  j["params"] = r.params;
  WriteFileAtomic(fs::path(a.out) / "ablation.json", j.dump(2) + "\n");
  WriteReport(a.out, r.report, a.variant);
}

int Run(int argc, char **argv) {
  CLI::App app{"Acoustic-to-articulatory inversion toolkit"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto *c_synth =
      app.add_subcommand("synth", "write a synthetic paired speech/EMA corpus");
  c_synth->add_option("--out", synth.out)->required();
  c_synth->add_option("--speakers", synth.speakers);
  c_synth->add_option("--utts", synth.utts, "utterances per speaker");
  c_synth->add_option("--duration", synth.duration, "seconds per utterance");
  c_synth->add_option("--seed", synth.seed);
  c_synth->add_option("--audio-rate", synth.audio_rate);

  PreprocessArgs pre;
  auto *c_pre =
      app.add_subcommand("preprocess", "resample, smooth and normalize a corpus");
  c_pre->add_option("--manifest", pre.manifest)->required();
  c_pre->add_option("--out", pre.out)->required();
  AddConfigFlags(c_pre, &pre.config);

  FeaturesArgs feat;
  auto *c_feat = app.add_subcommand("features", "populate the feature cache");
  c_feat->add_option("--manifest", feat.manifest)->required();
  c_feat->add_option("--cache", feat.cache,
                     std::string("cache root (default $") + kCacheEnv + ")");
  c_feat->add_option("--backend", feat.backend, "precomputed_ssl | mfcc | stub");
  AddConfigFlags(c_feat, &feat.config);

  TrainArgs train;
  auto *c_train =
      app.add_subcommand("train", "train an inverter, leaving one speaker out");
  c_train->add_option("--manifest", train.manifest)->required();
  c_train->add_option("--out", train.out)->required();
  c_train->add_option("--held-out", train.held_out, "speaker excluded from training");
  c_train->add_option("--cache", train.cache);
  c_train->add_flag("--resume", train.resume, "continue from <out>/last.ckpt");
  AddConfigFlags(c_train, &train.config);
  AddPresetFlag(c_train, &train.config);

  EvalArgs ev;
  auto *c_eval = app.add_subcommand("eval", "score a checkpoint on a corpus");
  c_eval->add_option("--checkpoint", ev.checkpoint)->required();
  c_eval->add_option("--manifest", ev.manifest)->required();
  c_eval->add_option("--out", ev.out)->required();
  c_eval->add_option("--speaker", ev.speakers, "restrict to these speakers");
  c_eval->add_option("--cache", ev.cache);
  c_eval->add_flag("--xz", ev.xz, "score only the X/Z channels");

  InvertArgs inv;
  auto *c_inv = app.add_subcommand("invert", "predict EMA for a WAV file");
  c_inv->add_option("--checkpoint", inv.checkpoint)->required();
  c_inv->add_option("--wav", inv.wav)->required();
  c_inv->add_option("--out", inv.out)->required();
  c_inv->add_option("--stats", inv.stats, "normalizer JSON; output in mm when given");
  c_inv->add_option("--speaker", inv.speaker, "speaker id for feature cache lookups");
  c_inv->add_option("--cache", inv.cache);

  AblateArgs abl;
  auto *c_abl = app.add_subcommand("ablate", "train and score one ablation variant");
  c_abl->add_option("--variant", abl.variant)->required();
  c_abl->add_option("--manifest", abl.manifest);
  c_abl->add_option("--out", abl.out);
  c_abl->add_option("--held-out", abl.held_out);
  c_abl->add_option("--cache", abl.cache);
  c_abl->add_flag("--params-only", abl.params_only, "print the parameter count and exit");
  AddConfigFlags(c_abl, &abl.config);
  AddPresetFlag(c_abl, &abl.config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "ERROR[E_USAGE]: " << e.what() << "\n";
    return 2;
  }

  if (*c_synth) CmdSynth(synth);
  if (*c_pre) CmdPreprocess(pre);
  if (*c_feat) CmdFeatures(feat);
  if (*c_train) CmdTrain(train);
  if (*c_eval) CmdEval(ev);
  if (*c_inv) CmdInvert(inv);
  if (*c_abl) CmdAblate(abl);
  return 0;
}

}  // namespace
}  // namespace artic

namespace {

int Report(std::string_view code, const std::string &what, int status) {
  std::cerr << "ERROR[" << code << "]: " << what.substr(0, what.find('\n')) << "\n";
  return status;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return artic::Run(argc, argv);
  } catch (const artic::Error &e) {
    return Report(artic::ErrorCodeName(e.code()), e.what(),
                  artic::ErrorExitStatus(e.code()));
  } catch (const fs::filesystem_error &e) {
    return Report("E_IO", e.what(), 3);
  } catch (const std::exception &e) {
    return Report("E_INTERNAL", e.what(), 1);
  }
}
