// tests/training_test.cc

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

#include <torch/torch.h>
#undef CHECK  // c10 logging macro; doctest provides its own

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <limits>

#include "artic/nn/checkpoint.h"
#include "artic/nn/training.h"
#include "doctest.h"
#include "test_util.h"

using namespace artic;

namespace {

constexpr int kDim = 16;

RunConfig Tiny() {
  RunConfig c;
  c.inverter.input_dim = kDim;
  c.inverter.model_dim = 32;
  c.inverter.n_pnp_blocks = 1;
  c.inverter.n_conformer_blocks = 1;
  c.inverter.dropout = 0.0;
  c.inverter.mask_span_frames = 5;
  c.mdpd.model_dim = 16;
  c.mdpd.n_layers_per_sub = 1;
  c.mdpd.durations_ms = {60, 150};
  c.mdpd.dropout = 0.0;
  c.mdpd.mask_span_tokens = 4;
  c.training.batch_size = 3;
  c.training.segment_frames = 60;
  c.training.disc_start_epoch = 1;
  c.training.max_epochs = 3;
  c.training.lr_inverter = 1e-3;
  c.training.lr_mdpd = 1e-3;
  return c;
}

// Targets are a fixed smooth function of the features, so they are learnable.
std::vector<TrainItem> Items(int n, int frames, uint64_t seed) {
  torch::manual_seed(seed);
  const torch::Tensor w = torch::randn({kDim, 18}) * 0.3;
  std::vector<TrainItem> items;
  for (int i = 0; i < n; ++i) {
    TrainItem it;
    it.speaker = i % 2 ? "M01" : "F01";
    it.utt = "u" + std::to_string(i);
    it.features = torch::randn({frames, kDim});
    it.ema = torch::sigmoid(it.features.matmul(w));
    items.push_back(it);
  }
  return items;
}

std::vector<torch::Tensor> Snapshot(const torch::nn::Module &m) {
  std::vector<torch::Tensor> out;
  for (const auto &p : m.parameters()) out.push_back(p.detach().clone());
  return out;
}

bool SameParams(const std::vector<torch::Tensor> &a,
                const std::vector<torch::Tensor> &b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!torch::equal(a[i], b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("batches: shapes, padding, partial batch and determinism") {
  std::vector<TrainItem> items = Items(10, 300, 0);
  items[4].features = items[4].features.narrow(0, 0, 100);
  items[4].ema = items[4].ema.narrow(0, 0, 100);
  const auto batches = MakeBatches(items, 180, 8, 5, 0);
  REQUIRE(batches.size() == 2);
  CHECK(batches[0].features.sizes() == torch::IntArrayRef({8, 180, kDim}));
  CHECK(batches[0].ema.sizes() == torch::IntArrayRef({8, 180, 18}));
  CHECK(batches[1].features.size(0) == 2);

  int seen = 0;
  for (const Batch &b : batches) {
    for (size_t r = 0; r < b.ids.size(); ++r) {
      ++seen;
      const double valid = b.valid[r].sum().item<double>();
      if (b.ids[r] == "F01/u4") {
        CHECK(valid == 100.0);
        CHECK(b.ema[r].narrow(0, 100, 80).abs().sum().item<double>() == 0.0);
        CHECK(torch::equal(b.ema[r].narrow(0, 0, 100), items[4].ema));
      } else {
        CHECK(valid == 180.0);
      }
    }
  }
  CHECK(seen == 10);

  const auto again = MakeBatches(items, 180, 8, 5, 0);
  CHECK(again[0].ids == batches[0].ids);
  CHECK(torch::equal(again[0].ema, batches[0].ema));
  const auto other = MakeBatches(items, 180, 8, 5, 1);
  CHECK(!torch::equal(other[0].ema, batches[0].ema));
}

TEST_CASE("warm start: the discriminator is frozen before disc_start_epoch") {
  const std::vector<TrainItem> items = Items(6, 120, 1);
  Trainer t(Tiny());
  const auto before = Snapshot(*t.mdpd());
  const auto inv_before = Snapshot(*t.inverter());
  const EpochLog e0 = t.TrainEpoch(items, nullptr);
  CHECK(SameParams(before, Snapshot(*t.mdpd())));
  CHECK(!SameParams(inv_before, Snapshot(*t.inverter())));
  CHECK(e0.adv_g == 0.0);
  CHECK(e0.adv_d == 0.0);
  CHECK(e0.fm == 0.0);
  const EpochLog e1 = t.TrainEpoch(items, nullptr);
  CHECK(!SameParams(before, Snapshot(*t.mdpd())));
  CHECK(e1.adv_d > 0.0);
  CHECK(e1.fm > 0.0);

  RunConfig off = Tiny();
  off.training.use_mdpd = false;
  Trainer t2(off);
  const auto b2 = Snapshot(*t2.mdpd());
  t2.TrainEpoch(items, nullptr);
  t2.TrainEpoch(items, nullptr);
  CHECK(SameParams(b2, Snapshot(*t2.mdpd())));
}

TEST_CASE("the discriminator step does not reach the inverter") {
  const std::vector<TrainItem> items = Items(3, 60, 2);
  Trainer t(Tiny());
  const Batch b = MakeBatches(items, 60, 3, 1, 0).front();
  for (auto &p : t.inverter()->parameters()) p.mutable_grad() = torch::Tensor();
  const torch::Tensor generated = t.inverter()->forward(b.features);
  const auto inv_before = Snapshot(*t.inverter());
  t.DiscriminatorStep(generated, b, 3);
  for (const auto &p : t.inverter()->parameters())
    CHECK((!p.grad().defined() || p.grad().abs().sum().item<double>() == 0.0));
  CHECK(SameParams(inv_before, Snapshot(*t.inverter())));
}

TEST_CASE("reconstruction descends on a fixed batch") {
  const std::vector<TrainItem> items = Items(3, 60, 3);
  RunConfig c = Tiny();
  c.training.disc_start_epoch = 100;
  Trainer t(c);
  const Batch b = MakeBatches(items, 60, 3, 1, 0).front();
  const double first = t.TrainStep(b, 0).recon;
  double last = first;
  for (int i = 0; i < 40; ++i) last = t.TrainStep(b, 0).recon;
  CHECK(last < 0.5 * first);
}

TEST_CASE("non-finite losses are reported with the batch ids") {
  std::vector<TrainItem> items = Items(2, 60, 4);
  items[1].features[3][2] = std::numeric_limits<float>::quiet_NaN();
  Trainer t(Tiny());
  const Batch b = MakeBatches(items, 60, 2, 1, 0).front();
  try {
    t.TrainStep(b, 0);
    FAIL("expected kNonFiniteLoss");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kNonFiniteLoss);
    CHECK(std::string(e.what()).find("M01/u1") != std::string::npos);
  }
}

TEST_CASE("checkpoint bytes survive save, load and save") {
  const std::vector<TrainItem> items = Items(4, 90, 5);
  Trainer t(Tiny());
  t.TrainEpoch(items, nullptr);
  t.TrainEpoch(items, nullptr);
  TempDir dir;
  const Checkpoint a = t.MakeCheckpoint();
  SaveCheckpoint(dir.path() / "a.ckpt", a);
  const Checkpoint loaded = LoadCheckpoint(dir.path() / "a.ckpt");
  CHECK(SerializeCheckpoint(loaded) == SerializeCheckpoint(a));

  Trainer u(Tiny());
  u.Restore(loaded);
  CHECK(SerializeCheckpoint(u.MakeCheckpoint()) == SerializeCheckpoint(a));
  CHECK(u.epoch() == 2);
  CHECK(u.step() == t.step());

  // The stored inverter predicts exactly like the trained one.
  InverterModel inv = LoadInverter(loaded);
  const torch::Tensor x = items[0].features;
  CHECK(torch::equal(Predict(inv, x), Predict(t.inverter(), x)));

  std::string bytes = SerializeCheckpoint(a);
  CHECK_ERROR_CODE(ParseCheckpoint(bytes.substr(0, bytes.size() / 2), "half"),
                   ErrorCode::kCheckpoint);
  CHECK_ERROR_CODE(ParseCheckpoint("garbage", "g"), ErrorCode::kCheckpoint);
  RunConfig other = Tiny();
  other.inverter.model_dim = 48;
  Trainer w(other);
  CHECK_ERROR_CODE(w.Restore(loaded), ErrorCode::kCheckpoint);
}

TEST_CASE("resuming continues bitwise and keeps one metrics row per epoch") {
  const std::vector<TrainItem> items = Items(4, 90, 6);
  TempDir full_dir, part_dir;
  Trainer full(Tiny());
  const auto history = full.Fit(items, nullptr, full_dir.path());
  CHECK(history.size() == 3);

  RunConfig two = Tiny();
  two.training.max_epochs = 2;
  Trainer part(two);
  part.Fit(items, nullptr, part_dir.path());
  Trainer resumed(Tiny());
  const Checkpoint ckpt = LoadCheckpoint(part_dir.path() / "last.ckpt");
  CHECK(ckpt.meta.at("epoch") == 2);
  resumed.Restore(ckpt);
  const auto rest = resumed.Fit(items, nullptr, part_dir.path());
  CHECK(rest.size() == 1);
  CHECK(SameParams(Snapshot(*full.inverter()), Snapshot(*resumed.inverter())));
  CHECK(SameParams(Snapshot(*full.mdpd()), Snapshot(*resumed.mdpd())));
  CHECK(rest[0].recon == history[2].recon);

  for (const auto *d : {&full_dir, &part_dir}) {
    std::ifstream in(d->path() / "metrics.csv");
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == MetricsCsvHeader());
    CHECK(lines[3].rfind("2,", 0) == 0);
  }
}

TEST_CASE("only training utterances enter updates") {
  std::vector<TrainItem> items = Items(6, 60, 7);
  Trainer t(Tiny());
  t.TrainEpoch(items, nullptr);
  t.TrainEpoch(items, nullptr);
  std::set<std::string> expected;
  for (const auto &it : items) expected.insert(it.id());
  CHECK(t.trained_ids() == expected);
}

TEST_CASE("steps_per_epoch draws extra passes") {
  RunConfig c = Tiny();
  c.training.steps_per_epoch = 5;
  Trainer t(c);
  t.TrainEpoch(Items(3, 60, 8), nullptr);
  CHECK(t.step() == 5);
}
