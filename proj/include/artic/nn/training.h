// include/artic/nn/training.h

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

#ifndef ARTIC_NN_TRAINING_H_
#define ARTIC_NN_TRAINING_H_

#include <torch/torch.h>

#include <filesystem>
#include <limits>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "artic/config.h"
#include "artic/nn/checkpoint.h"
#include "artic/nn/dataset.h"
#include "artic/nn/evaluate.h"
#include "artic/nn/inverter.h"
#include "artic/nn/losses.h"
#include "artic/nn/mdpd.h"
#include "artic/nn/optim.h"

namespace artic {

struct EpochLog {
  int epoch = 0;
  int64_t step = 0;  // global step count after the epoch
  double recon = 0.0, adv_g = 0.0, adv_d = 0.0, fm = 0.0;
  double lr = 0.0;
  double val_pcc = std::numeric_limits<double>::quiet_NaN();
  double val_rmse = std::numeric_limits<double>::quiet_NaN();
};

std::string MetricsCsvHeader();
std::string MetricsCsvRow(const EpochLog &log);

// Owns both networks and their optimizers. All randomness is derived from
// (training.seed, epoch, step), so a restored trainer continues bitwise.
class Trainer {
 public:
  explicit Trainer(const RunConfig &config);

  // Before training.disc_start_epoch (or with use_mdpd off) only the inverter
  // is updated, on the reconstruction loss. Afterwards: one discriminator
  // update on detached inverter output, then one inverter update on
  // adv_g + recon + fm. Throws kNonFiniteLoss with the batch ids.
  LossBundle TrainStep(const Batch &batch, int epoch);

  // The discriminator half of a step. |generated| is detached here.
  double DiscriminatorStep(const torch::Tensor &generated, const Batch &batch,
                           uint64_t mask_seed);

  // Sets the epoch's learning rates and runs its batches; evaluates on |val|
  // when given.
  EpochLog TrainEpoch(std::span<const TrainItem> train, const EvalSet *val);

  // Runs epochs up to training.max_epochs. With |out_dir|, appends to
  // metrics.csv and rewrites last.ckpt after every epoch.
  std::vector<EpochLog> Fit(std::span<const TrainItem> train, const EvalSet *val,
                            const std::filesystem::path &out_dir = {});

  Checkpoint MakeCheckpoint() const;
  void Restore(const Checkpoint &ckpt);

  InverterModel &inverter() { return inverter_; }
  MdpdModel &mdpd() { return mdpd_; }
  const RunConfig &config() const { return config_; }
  int epoch() const { return epoch_; }
  int64_t step() const { return step_; }
  // Every utterance id that has entered a parameter update.
  const std::set<std::string> &trained_ids() const { return trained_ids_; }

 private:
  void Backward(const torch::Tensor &loss, const std::vector<torch::Tensor> &params);
  void CheckFinite(const char *name, const torch::Tensor &loss, const Batch &batch) const;
  std::vector<Batch> EpochBatches(std::span<const TrainItem> train) const;

  RunConfig config_;
  InverterModel inverter_{nullptr};
  MdpdModel mdpd_{nullptr};
  std::unique_ptr<AdamW> opt_inverter_, opt_mdpd_;
  int epoch_ = 0;
  int64_t step_ = 0;
  std::set<std::string> trained_ids_;
};

}  // namespace artic

#endif  // ARTIC_NN_TRAINING_H_
