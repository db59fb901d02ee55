// src/nn/training.cc

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

#include "artic/nn/training.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "artic/corpus.h"
#include "artic/error.h"
#include "artic/nn/masking.h"

namespace artic {

namespace {

std::vector<torch::Tensor> Scores(const std::vector<SubDiscriminatorOutput> &out) {
  std::vector<torch::Tensor> s;
  for (const auto &o : out) s.push_back(o.scores);
  return s;
}

std::vector<std::vector<torch::Tensor>> Features(
    const std::vector<SubDiscriminatorOutput> &out) {
  std::vector<std::vector<torch::Tensor>> f;
  for (const auto &o : out) f.push_back(o.features);
  return f;
}

AdamWOptions OptimOptions(const TrainConfig &t, double lr) {
  AdamWOptions o;
  o.lr = lr;
  o.beta1 = t.adam_beta1;
  o.beta2 = t.adam_beta2;
  o.eps = t.adam_eps;
  o.weight_decay = t.weight_decay;
  return o;
}

std::string Num(double v) {
  std::ostringstream ss;
  ss.precision(10);
  ss << v;
  return ss.str();
}

}  // namespace

std::string MetricsCsvHeader() {
  return "epoch,step,recon,adv_g,adv_d,fm,lr,val_pcc,val_rmse";
}

std::string MetricsCsvRow(const EpochLog &l) {
  return std::to_string(l.epoch) + "," + std::to_string(l.step) + "," + Num(l.recon) +
         "," + Num(l.adv_g) + "," + Num(l.adv_d) + "," + Num(l.fm) + "," + Num(l.lr) +
         "," + Num(l.val_pcc) + "," + Num(l.val_rmse);
}

Trainer::Trainer(const RunConfig &config) : config_(config) {
  Validate(config_);
  torch::manual_seed(config_.training.seed);
  inverter_ = InverterModel(config_.inverter);
  mdpd_ = MdpdModel(config_.mdpd);
  const TrainConfig &t = config_.training;
  opt_inverter_ =
      std::make_unique<AdamW>(inverter_->parameters(), OptimOptions(t, t.lr_inverter));
  opt_mdpd_ = std::make_unique<AdamW>(mdpd_->parameters(), OptimOptions(t, t.lr_mdpd));
}

void Trainer::CheckFinite(const char *name, const torch::Tensor &loss,
                          const Batch &batch) const {
  const double v = loss.item<double>();
  if (std::isfinite(v)) return;
  std::string ids;
  for (const std::string &id : batch.ids) ids += (ids.empty() ? "" : ",") + id;
  Fail(ErrorCode::kNonFiniteLoss, std::string("non-finite ") + name + " loss (" + Num(v) +
                                      ") at epoch " + std::to_string(epoch_) + " step " +
                                      std::to_string(step_) + "; batch: " + ids);
}

void Trainer::Backward(const torch::Tensor &loss,
                       const std::vector<torch::Tensor> &params) {
  loss.backward();
  if (config_.training.grad_clip > 0.0)
    torch::nn::utils::clip_grad_norm_(params, config_.training.grad_clip);
}

double Trainer::DiscriminatorStep(const torch::Tensor &generated, const Batch &batch,
                                  uint64_t mask_seed) {
  mdpd_->train();
  opt_mdpd_->ZeroGrad();
  const auto real = mdpd_->forward(batch.ema, mask_seed);
  const auto fake = mdpd_->forward(generated.detach(), mask_seed);
  const torch::Tensor adv_d =
      AdvDLoss(Scores(real), Scores(fake), config_.losses.sub_aggregation);
  CheckFinite("adv_d", adv_d, batch);
  for (const std::string &id : batch.ids) trained_ids_.insert(id);
  Backward(config_.losses.w_adv_d * adv_d, mdpd_->parameters());
  opt_mdpd_->Step();
  return adv_d.item<double>();
}

LossBundle Trainer::TrainStep(const Batch &batch, int epoch) {
  const LossConfig &w = config_.losses;
  const uint64_t step_seed = MixSeed(config_.training.seed, static_cast<uint64_t>(step_));
  torch::manual_seed(step_seed);
  for (const std::string &id : batch.ids) trained_ids_.insert(id);

  inverter_->train();
  const torch::Tensor pred = inverter_->forward(batch.features, MixSeed(step_seed, 1));
  // Padding frames are zero in the reference; match them in the estimate.
  const torch::Tensor generated = pred * batch.valid.unsqueeze(-1);
  const torch::Tensor recon = ReconLoss(pred, batch.ema, batch.valid);

  LossBundle bundle;
  if (!config_.training.use_mdpd || epoch < config_.training.disc_start_epoch) {
    CheckFinite("recon", recon, batch);
    opt_inverter_->ZeroGrad();
    Backward(w.w_recon * recon, inverter_->parameters());
    opt_inverter_->Step();
    bundle = Compose(recon.item<double>(), 0.0, 0.0, 0.0, w);
  } else {
    const uint64_t d_seed = MixSeed(step_seed, 2);
    const double adv_d = DiscriminatorStep(generated, batch, d_seed);

    const auto fake = mdpd_->forward(generated, d_seed);
    std::vector<SubDiscriminatorOutput> real;
    {
      torch::NoGradGuard no_grad;
      real = mdpd_->forward(batch.ema, d_seed);
    }
    const torch::Tensor adv_g = AdvGLoss(Scores(fake), w.sub_aggregation);
    const torch::Tensor fm =
        FeatureMatchingLoss(Features(real), Features(fake), w.sub_aggregation);
    const torch::Tensor total = w.w_adv_g * adv_g + w.w_recon * recon + w.w_fm * fm;
    CheckFinite("inverter", total, batch);
    opt_inverter_->ZeroGrad();
    Backward(total, inverter_->parameters());
    opt_inverter_->Step();
    // The inverter objective also reached the discriminator; drop those grads.
    opt_mdpd_->ZeroGrad();
    bundle =
        Compose(recon.item<double>(), adv_g.item<double>(), adv_d, fm.item<double>(), w);
  }
  ++step_;
  return bundle;
}

std::vector<Batch> Trainer::EpochBatches(std::span<const TrainItem> train) const {
  const TrainConfig &t = config_.training;
  std::vector<Batch> batches =
      MakeBatches(train, t.segment_frames, t.batch_size, t.seed, epoch_);
  if (t.steps_per_epoch <= 0) return batches;
  for (int pass = 1; static_cast<int>(batches.size()) < t.steps_per_epoch; ++pass) {
    std::vector<Batch> more =
        MakeBatches(train, t.segment_frames, t.batch_size, t.seed, epoch_, pass);
    for (Batch &b : more) batches.push_back(std::move(b));
  }
  batches.resize(t.steps_per_epoch);
  return batches;
}

EpochLog Trainer::TrainEpoch(std::span<const TrainItem> train, const EvalSet *val) {
  const TrainConfig &t = config_.training;
  const double lr_i =
      CosineWarmRestartLr(epoch_, t.lr_inverter, t.sched_t0, t.sched_t_mult, t.min_lr);
  const double lr_d =
      CosineWarmRestartLr(epoch_, t.lr_mdpd, t.sched_t0, t.sched_t_mult, t.min_lr);
  opt_inverter_->set_lr(lr_i);
  opt_mdpd_->set_lr(lr_d);

  EpochLog log;
  log.epoch = epoch_;
  log.lr = lr_i;
  const std::vector<Batch> batches = EpochBatches(train);
  for (const Batch &b : batches) {
    const LossBundle l = TrainStep(b, epoch_);
    log.recon += l.recon;
    log.adv_g += l.adv_g;
    log.adv_d += l.adv_d;
    log.fm += l.fm;
  }
  const double n = static_cast<double>(batches.size());
  log.recon /= n;
  log.adv_g /= n;
  log.adv_d /= n;
  log.fm /= n;
  log.step = step_;
  if (val && !val->items.empty()) {
    const EvalReport r = EvaluateSpeaker(inverter_, *val);
    log.val_pcc = r.total_pcc;
    log.val_rmse = r.total_rmse_mm;
  }
  ++epoch_;
  return log;
}

std::vector<EpochLog> Trainer::Fit(std::span<const TrainItem> train, const EvalSet *val,
                                   const std::filesystem::path &out_dir) {
  std::string csv;
  const std::filesystem::path csv_path = out_dir / "metrics.csv";
  if (!out_dir.empty()) {
    // On resume keep the rows of epochs already trained.
    csv = MetricsCsvHeader() + "\n";
    std::ifstream in(csv_path);
    std::string line;
    for (bool first = true; std::getline(in, line); first = false) {
      if (first || line.empty()) continue;
      if (std::stoi(line.substr(0, line.find(','))) < epoch_) csv += line + "\n";
    }
  }
  std::vector<EpochLog> history;
  while (epoch_ < config_.training.max_epochs) {
    history.push_back(TrainEpoch(train, val));
    if (!out_dir.empty()) {
      csv += MetricsCsvRow(history.back()) + "\n";
      WriteFileAtomic(csv_path, csv);
      SaveCheckpoint(out_dir / "last.ckpt", MakeCheckpoint());
    }
  }
  return history;
}

Checkpoint Trainer::MakeCheckpoint() const {
  Checkpoint ckpt;
  ckpt.meta = {
      {"config", ToJson(config_)},
      {"config_hash", ConfigHash(config_)},
      {"epoch", epoch_},
      {"step", step_},
      {"seed", config_.training.seed},
      {"optim",
       {{"inverter", opt_inverter_->StateHeader()}, {"mdpd", opt_mdpd_->StateHeader()}}}};
  AppendModuleState("inverter", *inverter_, &ckpt);
  AppendModuleState("mdpd", *mdpd_, &ckpt);
  opt_inverter_->AppendStateTensors("optim.inverter", &ckpt.tensors);
  opt_mdpd_->AppendStateTensors("optim.mdpd", &ckpt.tensors);
  return ckpt;
}

void Trainer::Restore(const Checkpoint &ckpt) {
  LoadModuleState(ckpt, "inverter", inverter_.get());
  LoadModuleState(ckpt, "mdpd", mdpd_.get());
  const auto tensors = ckpt.TensorMap();
  try {
    opt_inverter_->LoadState(ckpt.meta.at("optim").at("inverter"), "optim.inverter",
                             tensors);
    opt_mdpd_->LoadState(ckpt.meta.at("optim").at("mdpd"), "optim.mdpd", tensors);
    epoch_ = ckpt.meta.at("epoch").get<int>();
    step_ = ckpt.meta.at("step").get<int64_t>();
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorCode::kCheckpoint, std::string("checkpoint header: ") + e.what());
  }
}

}  // namespace artic
