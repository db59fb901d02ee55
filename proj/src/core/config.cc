// src/core/config.cc

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

#include "artic/config.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "artic/error.h"

namespace artic {

using nlohmann::json;

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(
    InverterConfig, input_dim, model_dim, n_pnp_blocks, n_conformer_blocks,
    attention_heads, ffn_expansion, conv_kernel, conv_stride, snake_factors, pnp_topology,
    mask_fraction, mask_span_frames, out_channels, dropout, trunk, mlp_ffn_per_block)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(MdpdConfig, durations_ms, ema_rate_hz,
                                                n_layers_per_sub, model_dim,
                                                attention_heads, ffn_expansion,
                                                conv_kernel, n_sensors, axes_per_sensor,
                                                token_mode, mask_fraction,
                                                mask_span_tokens, dropout)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(LossConfig, w_recon, w_adv_g, w_adv_d,
                                                w_fm, sub_aggregation)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(TrainConfig, batch_size, lr_inverter,
                                                lr_mdpd, adam_beta1, adam_beta2, adam_eps,
                                                weight_decay, sched_t0, sched_t_mult,
                                                min_lr, disc_start_epoch, max_epochs,
                                                steps_per_epoch, segment_frames, seed,
                                                channels, use_mdpd, grad_clip)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(DataConfig, manifest, held_out,
                                                lowess_window)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(FeatureConfig, backend, cache, stub_seed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RunConfig, data, features, inverter, mdpd,
                                                losses, training)

namespace {

void Require(bool ok, const std::string &what) {
  if (!ok) Fail(ErrorCode::kMalformedConfig, "config: " + what);
}

// Rejects keys of |given| that |reference| does not have.
void CheckKeys(const json &reference, const json &given, const std::string &prefix) {
  if (!given.is_object()) return;
  for (const auto &[key, value] : given.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!reference.contains(key))
      Fail(ErrorCode::kUnknownConfigKey, "unknown config key '" + path + "'");
    if (reference[key].is_object()) CheckKeys(reference[key], value, path);
  }
}

template <typename T>
T Parse(const json &j) {
  CheckKeys(json(T{}), j, "");
  try {
    return j.get<T>();
  } catch (const json::exception &e) {
    Fail(ErrorCode::kMalformedConfig, std::string("config: ") + e.what());
  }
}

}  // namespace

int MdpdConfig::duration_frames(size_t i) const {
  const double frames = durations_ms.at(i) * ema_rate_hz / 1000.0;
  const long rounded = std::lround(frames);
  if (rounded < 1 || std::abs(frames - rounded) > 1e-9)
    Fail(ErrorCode::kMalformedConfig, "mdpd: duration " +
                                          std::to_string(durations_ms[i]) +
                                          " ms is not a positive whole number of frames");
  return static_cast<int>(rounded);
}

void Validate(const InverterConfig &c) {
  Require(c.input_dim > 0 && c.model_dim > 0 && c.out_channels > 0,
          "inverter dims must be > 0");
  Require(c.n_pnp_blocks >= 0 && c.n_conformer_blocks >= 0 && c.total_blocks() > 0,
          "inverter needs at least one block");
  Require(c.attention_heads > 0 && c.model_dim % c.attention_heads == 0,
          "inverter.attention_heads must divide model_dim");
  Require(c.ffn_expansion > 0, "inverter.ffn_expansion must be > 0");
  Require(c.conv_kernel > 0 && c.conv_kernel % 2 == 1,
          "inverter.conv_kernel must be odd");
  Require(c.conv_stride == 1, "inverter.conv_stride must be 1 (length-preserving)");
  Require(c.snake_factors.size() == 4, "inverter.snake_factors must have 4 entries");
  for (double a : c.snake_factors) Require(a > 0.0, "inverter.snake_factors must be > 0");
  Require(c.pnp_topology == "chain" || c.pnp_topology == "parallel_sum",
          "inverter.pnp_topology must be chain or parallel_sum");
  Require(c.mask_fraction >= 0.0 && c.mask_fraction < 1.0,
          "inverter.mask_fraction must be in [0, 1)");
  Require(c.mask_span_frames >= 1, "inverter.mask_span_frames must be >= 1");
  Require(c.dropout >= 0.0 && c.dropout < 1.0, "inverter.dropout must be in [0, 1)");
  Require(c.trunk == "conformer" || c.trunk == "transformer" || c.trunk == "cnn" ||
              c.trunk == "mlp",
          "inverter.trunk must be conformer, transformer, cnn or mlp");
  Require(c.mlp_ffn_per_block >= 1, "inverter.mlp_ffn_per_block must be >= 1");
}

void Validate(const MdpdConfig &c) {
  Require(!c.durations_ms.empty(), "mdpd.durations_ms must not be empty");
  for (size_t i = 0; i < c.durations_ms.size(); ++i) c.duration_frames(i);
  Require(c.n_layers_per_sub >= 1, "mdpd.n_layers_per_sub must be >= 1");
  Require(c.n_sensors >= 1 && c.axes_per_sensor >= 1, "mdpd sensor layout must be >= 1");
  Require(c.token_mode == "project" || c.token_mode == "native",
          "mdpd.token_mode must be project or native");
  if (c.token_mode == "project")
    Require(c.model_dim > 0 && c.model_dim % c.attention_heads == 0,
            "mdpd.attention_heads must divide model_dim");
  Require(c.attention_heads >= 1, "mdpd.attention_heads must be >= 1");
  Require(c.conv_kernel > 0 && c.conv_kernel % 2 == 1, "mdpd.conv_kernel must be odd");
  Require(c.mask_fraction >= 0.0 && c.mask_fraction < 1.0,
          "mdpd.mask_fraction in [0, 1)");
  Require(c.mask_span_tokens >= 1, "mdpd.mask_span_tokens must be >= 1");
  Require(c.dropout >= 0.0 && c.dropout < 1.0, "mdpd.dropout must be in [0, 1)");
}

void Validate(const RunConfig &c) {
  Validate(c.inverter);
  Validate(c.mdpd);
  const TrainConfig &t = c.training;
  Require(t.batch_size >= 1, "training.batch_size must be >= 1");
  Require(t.lr_inverter > 0.0 && t.lr_mdpd > 0.0, "training learning rates must be > 0");
  Require(t.min_lr >= 0.0, "training.min_lr must be >= 0");
  Require(t.sched_t0 >= 1 && t.sched_t_mult >= 1,
          "training scheduler periods must be >= 1");
  Require(t.disc_start_epoch >= 0, "training.disc_start_epoch must be >= 0");
  Require(t.max_epochs >= 0 && t.steps_per_epoch >= 0,
          "training epoch counts must be >= 0");
  Require(t.segment_frames >= 1, "training.segment_frames must be >= 1");
  Require(t.channels == "xyz" || t.channels == "xz",
          "training.channels must be xyz or xz");
  const int expected = t.channels == "xz" ? 12 : 18;
  Require(c.inverter.out_channels == expected, "inverter.out_channels must be " +
                                                   std::to_string(expected) +
                                                   " for channels=" + t.channels);
  Require(c.mdpd.channels() == expected,
          "mdpd sensor layout must match training.channels");
  Require(c.losses.sub_aggregation == "mean" || c.losses.sub_aggregation == "sum",
          "losses.sub_aggregation must be mean or sum");
  Require(c.data.lowess_window >= 3 && c.data.lowess_window % 2 == 1,
          "data.lowess_window must be odd and >= 3");
}

json ToJson(const RunConfig &c) { return json(c); }
json ToJson(const InverterConfig &c) { return json(c); }
json ToJson(const MdpdConfig &c) { return json(c); }
json ToJson(const TrainConfig &c) { return json(c); }

RunConfig RunConfigFromJson(const json &j) { return Parse<RunConfig>(j); }
InverterConfig InverterConfigFromJson(const json &j) { return Parse<InverterConfig>(j); }
MdpdConfig MdpdConfigFromJson(const json &j) { return Parse<MdpdConfig>(j); }

RunConfig LoadRunConfig(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::exception &e) {
    Fail(ErrorCode::kMalformedConfig, path.string() + ": " + e.what());
  }
  return RunConfigFromJson(j);
}

void ApplyOverride(RunConfig *config, const std::string &assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    Fail(ErrorCode::kMalformedConfig, "override '" + assignment + "' is not key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json j = ToJson(*config);
  json *node = &j;
  size_t start = 0;
  while (true) {
    const size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (!node->is_object() || !node->contains(part))
      Fail(ErrorCode::kUnknownConfigKey, "unknown config key '" + key + "'");
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = value;
  *config = RunConfigFromJson(j);
}

uint64_t ConfigHash(const RunConfig &c) {
  const std::string s = ToJson(c).dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

RunConfig FullScaleConfig() {
  RunConfig c;
  c.training.batch_size = 58;
  c.training.disc_start_epoch = 28;
  c.training.max_epochs = 100;
  return c;
}

RunConfig DeskConfig() {
  RunConfig c;
  c.inverter.model_dim = 64;
  c.inverter.n_pnp_blocks = 1;
  c.inverter.n_conformer_blocks = 1;
  c.inverter.dropout = 0.0;
  c.mdpd.model_dim = 64;
  c.mdpd.n_layers_per_sub = 2;
  c.mdpd.durations_ms = {60, 180};
  c.mdpd.dropout = 0.0;
  c.training.batch_size = 8;
  c.training.disc_start_epoch = 2;
  c.training.max_epochs = 20;
  c.training.lr_inverter = 1e-3;
  c.training.lr_mdpd = 1e-3;
  return c;
}

}  // namespace artic
