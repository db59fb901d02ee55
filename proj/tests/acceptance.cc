// tests/acceptance.cc

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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and budgets are fixed here.

#include <torch/torch.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "artic/config.h"
#include "artic/ema.h"
#include "artic/metrics.h"
#include "artic/nn/ablation.h"
#include "artic/nn/conformer.h"
#include "artic/nn/dataset.h"
#include "artic/nn/evaluate.h"
#include "artic/nn/inverter.h"
#include "artic/nn/losses.h"
#include "artic/nn/masking.h"
#include "artic/nn/mdpd.h"
#include "artic/nn/snake.h"
#include "artic/nn/training.h"
#include "artic/preprocess.h"
#include "artic/split.h"
#include "artic/synth.h"
#include "torch_util.h"

namespace artic {
namespace {

// Pinned tolerances and budgets.
constexpr double kReshapeBudgetSec = 10.0;
constexpr double kSnakeTol = 1e-7;
constexpr double kLossExactTol = 1e-7;
constexpr double kLossOracleTol = 1e-6;
constexpr double kGradRelTol = 1e-4;
constexpr double kGradStep = 1e-5;
constexpr double kMaskLo = 0.13, kMaskHi = 0.17;
constexpr double kMetricOracleTol = 1e-9;
constexpr double kMetricExactTol = 1e-12;
constexpr double kOverfitPcc = 0.95;
constexpr int kOverfitSteps = 300;
constexpr double kOverfitBudgetSec = 600.0;
constexpr double kParamTolerance = 0.15;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; keeps the detail string short.
class Checker {
 public:
  void Expect(bool ok, const std::string &what) {
    if (!ok && outcome_.pass) {
      outcome_.pass = false;
      outcome_.detail = "failed: " + what;
    }
  }
  void Note(const std::string &s) {
    if (outcome_.pass) outcome_.detail = s;
  }
  Outcome Done() const { return outcome_; }

 private:
  Outcome outcome_;
};

std::string Fmt(const char *fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

double MaxAbs(const torch::Tensor &t) { return t.abs().max().item<double>(); }

// ---------------------------------------------------------------- AC1
Outcome ReshapeCorrectness() {
  Checker c;
  std::mt19937_64 rng(101);
  const std::vector<int64_t> durations = {6, 9, 10, 15, 18};
  int non_multiple = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int64_t t_pd = durations[rng() % durations.size()];
    const int64_t frames = 1 + static_cast<int64_t>(rng() % 700);
    non_multiple += frames % t_pd != 0;
    const torch::Tensor ema = torch::rand({1, 18, frames});
    const torch::Tensor split = torch::randn({5, t_pd}), end = torch::randn({t_pd});
    const torch::Tensor aug = InsertChannelEmbeddings(ema, split, end, 3);
    const torch::Tensor tok = ReshapeForDuration(aug, t_pd);
    const int64_t expect = 24 * ((frames + t_pd - 1) / t_pd);
    c.Expect(tok.size(1) == expect && TokenCount(24, frames, t_pd) == expect,
             "token count at T=" + std::to_string(frames));
    const torch::Tensor back = UnreshapeForDuration(tok, 24, t_pd).narrow(2, 0, frames);
    c.Expect(torch::equal(back, aug), "round trip at T=" + std::to_string(frames));
    c.Expect(torch::equal(RemoveChannelEmbeddings(back, 6, 3), ema), "embedding removal");
  }
  c.Expect(TokenCount(24, 600, 6) == 2400, "T=600, t_pd=6 gives 2400 tokens");
  c.Expect(non_multiple > 0, "some T not divisible by t_pd");
  c.Note("200 pairs bitwise, " + std::to_string(non_multiple) +
         " with T % t_pd != 0; 600/6 -> 2400");
  return c.Done();
}

// ---------------------------------------------------------------- AC2
Outcome SnakeIdentities() {
  Checker c;
  const torch::Tensor x = torch::linspace(-10.0, 10.0, 10000, torch::kFloat64);
  double worst = 0.0;
  for (double a : {5.0, 7.0, 11.0, 13.0}) {
    const double p = std::numbers::pi / a;
    const double at0 =
        std::abs(Snake(torch::zeros({1}, torch::kFloat64), a).item<double>());
    const double atp =
        std::abs(Snake(torch::full({1}, p, torch::kFloat64), a).item<double>() - p);
    const torch::Tensor r0 = Snake(x, a) - x;
    const double period = MaxAbs(r0 - (Snake(x + p, a) - (x + p)));
    const double bound = MaxAbs(r0) - 1.0 / a;
    worst = std::max({worst, at0, atp, period});
    c.Expect(at0 <= kSnakeTol, "snake(0)");
    c.Expect(atp <= kSnakeTol, "snake(pi/a)");
    c.Expect(period <= kSnakeTol, "periodicity");
    c.Expect(bound <= kSnakeTol, "|snake(x)-x| <= 1/a");
  }
  c.Note("a in {5,7,11,13}, 1e4-point grid, worst deviation " + Fmt("%.1e", worst));
  return c.Done();
}

// ---------------------------------------------------------------- AC3
double Item(const torch::Tensor &t) { return t.item<double>(); }

double MeanSqOracle(const torch::Tensor &a, double target) {
  const torch::Tensor f = a.contiguous().view({-1});
  auto acc = f.accessor<double, 1>();
  double s = 0.0;
  for (int64_t i = 0; i < f.numel(); ++i) s += (acc[i] - target) * (acc[i] - target);
  return s / f.numel();
}

double MeanAbsOracle(const torch::Tensor &a, const torch::Tensor &b) {
  const torch::Tensor fa = a.contiguous().view({-1}), fb = b.contiguous().view({-1});
  auto aa = fa.accessor<double, 1>(), bb = fb.accessor<double, 1>();
  double s = 0.0;
  for (int64_t i = 0; i < fa.numel(); ++i) s += std::abs(aa[i] - bb[i]);
  return s / fa.numel();
}

Outcome LossIdentities() {
  Checker c;
  auto full = [](double v) {
    std::vector<torch::Tensor> out;
    for (int64_t n : {2400, 1600, 1440, 960, 800})
      out.push_back(torch::full({2, n}, v, torch::kFloat64));
    return out;
  };
  auto near = [](double got, double want) {
    return std::abs(got - want) <= kLossExactTol;
  };
  torch::manual_seed(301);
  const torch::Tensor a = torch::randn({2, 50, 18}, torch::kFloat64);
  c.Expect(near(Item(ReconLoss(a, a)), 0.0), "recon(identical) = 0");
  c.Expect(near(Item(AdvDLoss(full(1.0), full(0.0))), 0.0), "adv_d(1, 0) = 0");
  c.Expect(near(Item(AdvDLoss(full(0.5), full(0.5))), 0.5), "adv_d(0.5, 0.5) = 0.5");
  c.Expect(near(Item(AdvGLoss(full(1.0))), 0.0), "adv_g(1) = 0");
  c.Expect(near(Item(AdvGLoss(full(0.5))), 0.25), "adv_g(0.5) = 0.25");

  const int layers = 7;
  std::vector<std::vector<torch::Tensor>> real(5), shifted(5), fake(5);
  for (int i = 0; i < 5; ++i)
    for (int l = 0; l < layers; ++l) {
      real[i].push_back(torch::randn({2, 40 + i, 8}, torch::kFloat64));
      shifted[i].push_back(real[i].back() + 1.0);
      fake[i].push_back(torch::randn({2, 40 + i, 8}, torch::kFloat64));
    }
  c.Expect(near(Item(FeatureMatchingLoss(real, real)), 0.0), "fm(identical) = 0");
  c.Expect(near(Item(FeatureMatchingLoss(real, shifted)), layers),
           "fm(unit offset) = layers");

  // Direct-summation oracles.
  double worst = 0.0;
  const torch::Tensor b = torch::randn({2, 50, 18}, torch::kFloat64);
  worst = std::max(worst, std::abs(Item(ReconLoss(a, b)) - MeanSqOracle(a - b, 0.0)));
  std::vector<torch::Tensor> sr, sf;
  double d = 0.0, g = 0.0;
  for (int64_t n : {30, 20, 12}) {
    sr.push_back(torch::randn({2, n}, torch::kFloat64));
    sf.push_back(torch::randn({2, n}, torch::kFloat64));
    d += MeanSqOracle(sr.back(), 1.0) + MeanSqOracle(sf.back(), 0.0);
    g += MeanSqOracle(sf.back(), 1.0);
  }
  worst = std::max(worst, std::abs(Item(AdvDLoss(sr, sf)) - d / 3));
  worst = std::max(worst, std::abs(Item(AdvGLoss(sf)) - g / 3));
  double fm = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int l = 0; l < layers; ++l) fm += MeanAbsOracle(real[i][l], fake[i][l]);
  worst = std::max(worst, std::abs(Item(FeatureMatchingLoss(real, fake)) - fm / 5));
  c.Expect(worst <= kLossOracleTol, "oracle agreement " + Fmt("%.1e", worst));
  c.Note("identities exact to 1e-7; oracle deviation " + Fmt("%.1e", worst));
  return c.Done();
}

// ---------------------------------------------------------------- AC4
Outcome GradientChecks() {
  Checker c;
  torch::manual_seed(401);
  double worst = 0.0;
  auto check = [&](const std::string &name, double err) {
    worst = std::max(worst, err);
    c.Expect(err < kGradRelTol, name + " rel error " + Fmt("%.1e", err));
  };

  torch::Tensor x = torch::randn({64}, torch::kFloat64).requires_grad_();
  const torch::Tensor wx = torch::randn({64}, torch::kFloat64);
  for (double a : {5.0, 7.0, 11.0, 13.0})
    check("snake",
          MaxGradRelError([&] { return (Snake(x, a) * wx).sum(); }, {x}, kGradStep));

  for (const char *topology : {"chain", "parallel_sum"}) {
    DepthwisePnpConv conv(16, 5, std::vector<double>{5, 7, 11, 13}, topology);
    conv->to(torch::kFloat64);
    torch::Tensor in = torch::randn({1, 16, 8}, torch::kFloat64).requires_grad_();
    const torch::Tensor w = torch::randn({1, 16, 8}, torch::kFloat64);
    std::vector<torch::Tensor> inputs = conv->parameters();
    inputs.push_back(in);
    check(std::string("pnp conv ") + topology,
          MaxGradRelError([&] { return (conv->forward(in) * w).sum(); }, inputs,
                          kGradStep));
  }

  InverterConfig ic;
  ic.input_dim = 8;
  ic.model_dim = 16;
  ic.n_pnp_blocks = 1;
  ic.n_conformer_blocks = 1;
  InverterModel inv(ic);
  inv->to(torch::kFloat64);
  torch::Tensor h = torch::randn({1, 6, 16}, torch::kFloat64).requires_grad_();
  const torch::Tensor wh = torch::randn({1, 6, 18}, torch::kFloat64);
  std::vector<torch::Tensor> head_inputs = inv->head()->parameters();
  head_inputs.push_back(h);
  check("fc head", MaxGradRelError([&] { return (inv->Head(h) * wh).sum(); }, head_inputs,
                                   kGradStep));

  MdpdConfig mc;
  mc.model_dim = 16;
  mc.n_layers_per_sub = 1;
  SubDiscriminator sub(mc, 6);
  sub->to(torch::kFloat64);
  const torch::Tensor ema = torch::rand({1, 20, 18}, torch::kFloat64);
  const torch::Tensor we = torch::randn({1, TokenCount(24, 20, 6), 16}, torch::kFloat64);
  std::vector<torch::Tensor> emb = {sub->split_embedding(), sub->end_embedding()};
  for (const auto &p : sub->named_parameters())
    if (p.key().rfind("embed.", 0) == 0) emb.push_back(p.value());
  check("mdpd token embedding",
        MaxGradRelError([&] { return (sub->Embed(sub->Tokens(ema)) * we).sum(); }, emb,
                        kGradStep));
  c.Note("float64, h=1e-5, worst rel error " + Fmt("%.1e", worst));
  return c.Done();
}

// ---------------------------------------------------------------- AC5
Outcome MaskCoverage() {
  Checker c;
  const InverterConfig ic;
  double total = 0.0;
  for (int draw = 0; draw < 1000; ++draw)
    total += DrawMaskPlan(500, ic.mask_fraction, ic.mask_span_frames, MixSeed(501, draw))
                 .coverage();
  const double mean = total / 1000.0;
  c.Expect(mean >= kMaskLo && mean <= kMaskHi, "mean coverage " + Fmt("%.4f", mean));

  torch::manual_seed(502);
  const torch::Tensor x = torch::randn({500, 32}), token = torch::randn({32});
  c.Expect(torch::equal(ApplyTimeMask(x, 0.0, 10, 7, token).first, x),
           "zero fraction identity");
  const auto m1 = ApplyTimeMask(x, 0.15, 10, 7, token);
  const auto m2 = ApplyTimeMask(x, 0.15, 10, 7, token);
  c.Expect(torch::equal(m1.first, m2.first) && m1.second.masked == m2.second.masked,
           "seeded determinism");
  c.Note("mean masked fraction " + Fmt("%.4f", mean) + " over 1000 draws at T=500");
  return c.Done();
}

// ---------------------------------------------------------------- AC6
double PccOracle(const std::vector<double> &x, const std::vector<double> &y) {
  long double n = x.size(), sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    syy += static_cast<long double>(y[i]) * y[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  return static_cast<double>((sxy - sx * sy / n) /
                             std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n)));
}

Outcome MetricOracles() {
  Checker c;
  std::mt19937_64 rng(601);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_pcc = 0.0, worst_rmse = 0.0, worst_id = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 40 + trial;
    std::vector<double> x(n), y(n), neg(n), aff(n);
    for (size_t i = 0; i < n; ++i) {
      x[i] = g(rng);
      y[i] = 0.4 * x[i] + g(rng);
      neg[i] = -x[i];
      aff[i] = 2.5 * x[i] + 7.0;
    }
    worst_pcc = std::max(worst_pcc, std::abs(Pcc(x, y) - PccOracle(x, y)));
    worst_id = std::max({worst_id, std::abs(Pcc(x, x) - 1.0), std::abs(Pcc(x, neg) + 1.0),
                         std::abs(Pcc(x, aff) - 1.0)});

    NormalizationState s;
    for (int ch = 0; ch < kNumEmaChannels; ++ch) {
      s.min[ch] = -20.0 + 5.0 * u(rng);
      s.max[ch] = s.min[ch] + 5.0 + 10.0 * u(rng);
    }
    EmaRecording p, r;
    p.units = r.units = EmaUnits::kNormalized;
    p.values = Matrix(kNumEmaChannels, 30);
    r.values = Matrix(kNumEmaChannels, 30);
    double sum = 0.0;
    for (int ch = 0; ch < kNumEmaChannels; ++ch)
      for (int t = 0; t < 30; ++t) {
        p.values(ch, t) = u(rng);
        r.values(ch, t) = u(rng);
        const double diff = (p.values(ch, t) - r.values(ch, t)) * (s.max[ch] - s.min[ch]);
        sum += diff * diff;
      }
    worst_rmse =
        std::max(worst_rmse, std::abs(RmseMm(p, r, s) - std::sqrt(sum / (18 * 30))));
  }
  c.Expect(worst_pcc <= kMetricOracleTol, "pcc oracle " + Fmt("%.1e", worst_pcc));
  c.Expect(worst_rmse <= kMetricOracleTol, "rmse oracle " + Fmt("%.1e", worst_rmse));
  c.Expect(worst_id <= kMetricExactTol, "pcc identities " + Fmt("%.1e", worst_id));
  c.Note("100 pairs; pcc " + Fmt("%.1e", worst_pcc) + ", rmse " +
         Fmt("%.1e", worst_rmse) + ", identities " + Fmt("%.1e", worst_id));
  return c.Done();
}

// ---------------------------------------------------------------- AC7
RunConfig OverfitConfig(uint64_t seed) {
  RunConfig c = DeskConfig();  // dim 64, 1 PNP + 1 Conformer block, 2 MDPD durations
  c.training.seed = seed;
  c.training.steps_per_epoch = 10;
  c.training.max_epochs = kOverfitSteps / c.training.steps_per_epoch;
  c.training.sched_t0 = c.training.max_epochs;
  c.training.sched_t_mult = 1;
  return c;
}

Outcome Overfit() {
  Checker c;
  const PreprocessedCorpus corpus = Preprocess(SynthDataset(2, 2, 2.0, 701));
  const FeatureBackendSpec stub = DefaultBackendSpec(FeatureBackend::kStub);
  EvalSet train_set;
  train_set.items = BuildItems(corpus.utterances, stub);
  train_set.stats = corpus.stats;
  std::string detail;
  bool any = false;
  for (uint64_t seed : {1, 2, 3}) {
    const RunConfig config = OverfitConfig(seed);
    Trainer trainer(config);
    trainer.Fit(train_set.items, nullptr);
    const double pcc = EvaluateSpeaker(trainer.inverter(), train_set).total_pcc;
    detail += (detail.empty() ? "" : ", ") + std::string("seed ") + std::to_string(seed) +
              " " + Fmt("%.3f", pcc);
    std::printf("  overfit seed %d: %lld steps, train PCC %.4f\n", static_cast<int>(seed),
                static_cast<long long>(trainer.step()), pcc);
    std::fflush(stdout);
    c.Expect(trainer.step() == kOverfitSteps, "step count");
    if (pcc > kOverfitPcc) {
      any = true;
      break;
    }
  }
  c.Expect(any, "no seed reached PCC > 0.95 (" + detail + ")");
  c.Note("train PCC " + detail);
  return c.Done();
}

// ---------------------------------------------------------------- AC8
std::vector<torch::Tensor> Snapshot(const torch::nn::Module &m) {
  std::vector<torch::Tensor> out;
  for (const auto &p : m.parameters()) out.push_back(p.detach().clone());
  return out;
}

bool Same(const std::vector<torch::Tensor> &a, const std::vector<torch::Tensor> &b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (!torch::equal(a[i], b[i])) return false;
  return a.size() == b.size();
}

RunConfig TinyConfig() {
  RunConfig c = DeskConfig();
  c.inverter.model_dim = 32;
  c.mdpd.model_dim = 16;
  c.mdpd.n_layers_per_sub = 1;
  c.training.batch_size = 4;
  c.training.segment_frames = 100;
  return c;
}

Outcome AdversarialWiring() {
  Checker c;
  const PreprocessedCorpus corpus = Preprocess(SynthDataset(2, 2, 1.0, 801));
  const std::vector<TrainItem> items =
      BuildItems(corpus.utterances, DefaultBackendSpec(FeatureBackend::kStub));
  RunConfig config = TinyConfig();
  config.training.disc_start_epoch = 2;
  Trainer t(config);
  const auto mdpd0 = Snapshot(*t.mdpd());
  for (int epoch = 0; epoch < 2; ++epoch) {
    const EpochLog log = t.TrainEpoch(items, nullptr);
    c.Expect(Same(mdpd0, Snapshot(*t.mdpd())), "MDPD changed in warm-start epoch");
    c.Expect(log.adv_g == 0.0 && log.adv_d == 0.0 && log.fm == 0.0,
             "adv/fm logged nonzero");
  }
  const EpochLog active = t.TrainEpoch(items, nullptr);
  c.Expect(!Same(mdpd0, Snapshot(*t.mdpd())), "MDPD not updated once active");
  c.Expect(active.adv_d > 0.0, "adv_d inactive after start");

  const Batch b = MakeBatches(items, 100, 4, 1, 3).front();
  for (auto &p : t.inverter()->parameters()) p.mutable_grad() = torch::Tensor();
  t.inverter()->train();
  const torch::Tensor generated = t.inverter()->forward(b.features, 5);
  t.DiscriminatorStep(generated, b, 6);
  bool zero = true;
  for (const auto &p : t.inverter()->parameters())
    zero &= !p.grad().defined() || p.grad().abs().sum().item<double>() == 0.0;
  c.Expect(zero, "D step produced inverter gradients");
  c.Note("epochs 0-1 frozen with adv/fm = 0; D step leaves inverter grads zero");
  return c.Done();
}

// ---------------------------------------------------------------- AC9
Outcome ProtocolHygiene() {
  Checker c;
  const PreprocessedCorpus corpus = Preprocess(SynthDataset(8, 2, 1.0, 901));
  const std::vector<Utterance> &utts = corpus.utterances;
  std::vector<UtteranceKey> keys;
  for (const Utterance &u : utts) keys.push_back({u.speaker_id, u.utterance_id});
  const std::vector<TrainItem> all =
      BuildItems(utts, DefaultBackendSpec(FeatureBackend::kStub));
  RunConfig config = TinyConfig();
  config.training.max_epochs = 1;
  config.training.disc_start_epoch = 0;
  int splits = 0;
  size_t audited = 0;
  for (const std::string &spk : SynthSpeakerIds(8)) {
    const LosoSplit split = MakeLosoSplit(keys, spk, 9);
    std::set<size_t> covered(split.train.begin(), split.train.end());
    for (size_t i : split.test) c.Expect(covered.insert(i).second, "train/test overlap");
    c.Expect(covered.size() == utts.size(), "split does not cover the corpus");
    std::vector<TrainItem> train;
    std::set<std::string> held;
    for (size_t i : split.train) {
      c.Expect(utts[i].speaker_id != spk, "held-out speaker in the train list");
      train.push_back(all[i]);
    }
    for (size_t i : split.test) held.insert(all[i].id());
    Trainer t(config);
    t.Fit(train, nullptr);
    for (const std::string &id : t.trained_ids()) {
      c.Expect(!held.count(id), "held-out utterance " + id + " entered a batch");
      ++audited;
    }
    c.Expect(t.trained_ids().size() == train.size(),
             "not every training utterance was used");
    ++splits;
  }
  c.Expect(splits == 8, "expected 8 splits");
  c.Note("8 LOSO splits, " + std::to_string(audited) + " batch ids audited, no leakage");
  return c.Done();
}

// ---------------------------------------------------------------- AC10
Outcome ParameterBudget() {
  Checker c;
  const std::vector<std::pair<std::string, double>> table = {
      {"proposed", 12.9},  {"mfcc_input", 12.6}, {"no_pnp", 12.6}, {"no_local", 12.6},
      {"no_global", 12.5}, {"mlp", 12.7},        {"no_mdpd", 12.9}};
  std::string detail;
  for (const auto &[variant, target] : table) {
    const double m =
        InverterParameterCount(ApplyAblation(RunConfig{}, variant).inverter) / 1e6;
    const double rel = std::abs(m - target) / target;
    c.Expect(rel <= kParamTolerance, variant + " " + Fmt("%.2fM", m));
    detail += (detail.empty() ? "" : " ") + variant + "=" + Fmt("%.2fM", m);
  }
  c.Note(detail);
  return c.Done();
}

struct Criterion {
  const char *id;
  const char *name;
  std::function<Outcome()> run;
  double budget_sec;  // 0: no runtime limit
};

}  // namespace
}  // namespace artic

int main() {
  using namespace artic;
  torch::set_num_threads(
      std::max(1, static_cast<int>(std::thread::hardware_concurrency())));
  const std::vector<Criterion> criteria = {
      {"AC1", "reshape correctness", ReshapeCorrectness, kReshapeBudgetSec},
      {"AC2", "snake identities", SnakeIdentities, 0},
      {"AC3", "loss identities", LossIdentities, 0},
      {"AC4", "gradient checks", GradientChecks, 0},
      {"AC5", "mask coverage", MaskCoverage, 0},
      {"AC6", "metric oracles", MetricOracles, 0},
      {"AC7", "end-to-end overfit", Overfit, kOverfitBudgetSec},
      {"AC8", "adversarial wiring", AdversarialWiring, 0},
      {"AC9", "protocol hygiene", ProtocolHygiene, 0},
      {"AC10", "parameter budget", ParameterBudget, 0},
  };
  int failed = 0;
  for (const Criterion &cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.budget_sec > 0 && sec > cr.budget_sec) {
      o.pass = false;
      o.detail += "; over the " + Fmt("%.0f", cr.budget_sec) + " s budget";
    }
    failed += !o.pass;
    std::printf("%s %s %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", cr.id, cr.name,
                o.detail.c_str(), sec);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
