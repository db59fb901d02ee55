// include/artic/config.h

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

#ifndef ARTIC_CONFIG_H_
#define ARTIC_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace artic {

// Inverter trunk: the proposed PNP-Conformer/Conformer stack and the
// substitutes used by the ablations.
//   conformer    n_pnp_blocks PNP-Conformers, then n_conformer_blocks Conformers
//   transformer  Conformer blocks without the convolution module
//   cnn          Conformer blocks with the attention module replaced by a
//                second convolution module
//   mlp          per-frame residual feed-forward stacks
struct InverterConfig {
  int input_dim = 1024;
  int model_dim = 256;
  int n_pnp_blocks = 4;
  int n_conformer_blocks = 4;
  int attention_heads = 4;
  int ffn_expansion = 4;
  int conv_kernel = 5;
  int conv_stride = 1;
  std::vector<double> snake_factors = {5.0, 7.0, 11.0, 13.0};
  std::string pnp_topology = "chain";  // chain | parallel_sum
  double mask_fraction = 0.15;
  int mask_span_frames = 10;
  int out_channels = 18;
  double dropout = 0.1;
  std::string trunk = "conformer";
  int mlp_ffn_per_block = 3;

  int total_blocks() const { return n_pnp_blocks + n_conformer_blocks; }
};

struct MdpdConfig {
  std::vector<int> durations_ms = {60, 90, 100, 150, 180};
  double ema_rate_hz = 100.0;
  int n_layers_per_sub = 6;
  int model_dim = 256;
  int attention_heads = 1;
  int ffn_expansion = 4;
  int conv_kernel = 5;
  int n_sensors = 6;
  int axes_per_sensor = 3;
  std::string token_mode = "project";  // project | native
  double mask_fraction = 0.15;
  int mask_span_tokens = 10;
  double dropout = 0.1;

  int channels() const { return n_sensors * axes_per_sensor; }
  // Traces plus (n_sensors - 1) split rows plus one end row.
  int augmented_channels() const { return channels() + n_sensors; }
  // Frames per token for duration index |i|; throws unless integral.
  int duration_frames(size_t i) const;
};

struct LossConfig {
  double w_recon = 1.0;
  double w_adv_g = 1.0;
  double w_adv_d = 1.0;
  double w_fm = 1.0;
  std::string sub_aggregation = "mean";  // mean | sum
};

struct TrainConfig {
  int batch_size = 8;
  double lr_inverter = 2e-4;
  double lr_mdpd = 2e-4;
  double adam_beta1 = 0.8;
  double adam_beta2 = 0.99;
  double adam_eps = 1e-8;
  double weight_decay = 0.01;
  int sched_t0 = 10;
  int sched_t_mult = 2;
  double min_lr = 1e-6;
  int disc_start_epoch = 2;
  int max_epochs = 10;
  int steps_per_epoch = 0;  // 0: one pass over the training utterances
  int segment_frames = 180;
  uint64_t seed = 1;
  std::string channels = "xyz";  // xyz | xz
  bool use_mdpd = true;
  double grad_clip = 0.0;  // global L2 norm, 0 disables
};

struct DataConfig {
  std::string manifest;
  std::string held_out;
  int lowess_window = 21;
};

struct FeatureConfig {
  std::string backend = "stub";
  std::string cache;
  uint64_t stub_seed = 0x5eed;
};

struct RunConfig {
  DataConfig data;
  FeatureConfig features;
  InverterConfig inverter;
  MdpdConfig mdpd;
  LossConfig losses;
  TrainConfig training;
};

// Throws kMalformedConfig on out-of-range values.
void Validate(const InverterConfig &c);
void Validate(const MdpdConfig &c);
void Validate(const RunConfig &c);

nlohmann::json ToJson(const RunConfig &c);
nlohmann::json ToJson(const InverterConfig &c);
nlohmann::json ToJson(const MdpdConfig &c);
nlohmann::json ToJson(const TrainConfig &c);

// Keys absent from |j| keep their defaults; keys the defaults do not have
// raise kUnknownConfigKey with the dotted path.
RunConfig RunConfigFromJson(const nlohmann::json &j);
InverterConfig InverterConfigFromJson(const nlohmann::json &j);
MdpdConfig MdpdConfigFromJson(const nlohmann::json &j);

RunConfig LoadRunConfig(const std::filesystem::path &path);

// "training.lr_inverter=1e-3". The value is parsed as JSON when possible and
// taken as a string otherwise.
void ApplyOverride(RunConfig *config, const std::string &assignment);

// FNV-1a of the canonical JSON dump.
uint64_t ConfigHash(const RunConfig &c);

// Full-scale defaults, and a small configuration that trains in minutes on
// one CPU core.
RunConfig FullScaleConfig();
RunConfig DeskConfig();

}  // namespace artic

#endif  // ARTIC_CONFIG_H_
