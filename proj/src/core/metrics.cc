// src/core/metrics.cc

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

#include "artic/metrics.h"

#include <cmath>
#include <cstdio>
#include <set>

#include "artic/error.h"
#include "json.hpp"

namespace artic {

double Pcc(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    Fail(ErrorCode::kShapeMismatch, "pcc: need equal lengths >= 2, got " +
                                        std::to_string(x.size()) + " and " +
                                        std::to_string(y.size()));
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0)
    Fail(ErrorCode::kConstantInput, "pcc: zero-variance input");
  return sxy / std::sqrt(sxx * syy);
}

namespace {

struct SquaredError {
  double sum = 0.0;
  long count = 0;
};

SquaredError AccumulateSquaredError(const EmaRecording &predicted,
                                    const EmaRecording &reference,
                                    const NormalizationState &stats,
                                    std::span<const int> stats_channels) {
  if (predicted.values.rows() != reference.values.rows() ||
      predicted.values.cols() != reference.values.cols())
    Fail(ErrorCode::kShapeMismatch, "rmse: predicted and reference shapes differ");
  const int rows = reference.channels();
  if (stats_channels.empty() ? rows != kNumEmaChannels
                             : static_cast<int>(stats_channels.size()) != rows)
    Fail(ErrorCode::kShapeMismatch, "rmse: channel map does not match rows");
  SquaredError acc;
  for (int r = 0; r < rows; ++r) {
    const int c = stats_channels.empty() ? r : stats_channels[r];
    const double range = stats.max.at(c) - stats.min.at(c);
    for (int t = 0; t < reference.frames(); ++t) {
      // Offsets cancel: only the range matters in millimetres.
      const double d = (predicted.values(r, t) - reference.values(r, t)) * range;
      acc.sum += d * d;
    }
    acc.count += reference.frames();
  }
  return acc;
}

}  // namespace

double RmseMm(const EmaRecording &predicted, const EmaRecording &reference,
              const NormalizationState &stats, std::span<const int> stats_channels) {
  const SquaredError e =
      AccumulateSquaredError(predicted, reference, stats, stats_channels);
  return e.count > 0 ? std::sqrt(e.sum / e.count) : 0.0;
}

EvalReport Aggregate(std::span<const EvalItem> items,
                     std::vector<std::string> channel_names) {
  EvalReport report;
  if (items.empty()) return report;
  const int channels = items.front().reference.channels();
  if (channel_names.empty()) {
    for (int c = 0; c < channels; ++c) channel_names.push_back(ChannelName(c));
  }
  if (static_cast<int>(channel_names.size()) != channels)
    Fail(ErrorCode::kShapeMismatch, "aggregate: channel name count mismatch");
  report.channel_names = channel_names;

  std::map<std::string, std::pair<double, int>> spk_pcc;
  std::map<std::string, SquaredError> spk_se;
  std::vector<std::pair<double, int>> chan(channels, {0.0, 0});
  SquaredError total_se;
  for (const EvalItem &item : items) {
    if (item.reference.channels() != channels || item.stats == nullptr)
      Fail(ErrorCode::kShapeMismatch, "aggregate: inconsistent items");
    double utt_sum = 0.0;
    int utt_n = 0;
    for (int c = 0; c < channels; ++c) {
      const Eigen::VectorXd p = item.predicted.values.row(c).transpose();
      const Eigen::VectorXd r = item.reference.values.row(c).transpose();
      double v;
      try {
        v = Pcc(std::span<const double>(p.data(), p.size()),
                std::span<const double>(r.data(), r.size()));
      } catch (const Error &e) {
        if (e.code() != ErrorCode::kConstantInput) throw;
        continue;
      }
      utt_sum += v;
      ++utt_n;
      chan[c].first += v;
      chan[c].second += 1;
    }
    auto &sp = spk_pcc[item.speaker];
    sp.first += utt_n > 0 ? utt_sum / utt_n : 0.0;
    sp.second += 1;
    const SquaredError se = AccumulateSquaredError(item.predicted, item.reference,
                                                   *item.stats, item.stats_channels);
    spk_se[item.speaker].sum += se.sum;
    spk_se[item.speaker].count += se.count;
    total_se.sum += se.sum;
    total_se.count += se.count;
    ++report.utterances;
  }
  double total = 0.0;
  for (const auto &[spk, acc] : spk_pcc) {
    report.per_speaker_pcc[spk] = acc.first / acc.second;
    total += report.per_speaker_pcc[spk];
    const SquaredError &se = spk_se[spk];
    report.per_speaker_rmse_mm[spk] = std::sqrt(se.sum / se.count);
  }
  report.total_pcc = total / spk_pcc.size();
  report.total_rmse_mm = std::sqrt(total_se.sum / total_se.count);
  for (const auto &[sum, n] : chan)
    report.per_channel_pcc.push_back(n > 0 ? sum / n : 0.0);
  return report;
}

std::string FormatReportTable(const EvalReport &report, const std::string &model_name) {
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%-12s", "Model");
  out += buf;
  for (const auto &[spk, _] : report.per_speaker_pcc) {
    std::snprintf(buf, sizeof(buf), " %7s", spk.c_str());
    out += buf;
  }
  out += " |     PCC    RMSE\n";
  std::snprintf(buf, sizeof(buf), "%-12s", model_name.c_str());
  out += buf;
  for (const auto &[_, v] : report.per_speaker_pcc) {
    std::snprintf(buf, sizeof(buf), " %7.3f", v);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), " | %7.3f %7.3f\n", report.total_pcc,
                report.total_rmse_mm);
  out += buf;
  return out;
}

std::string ReportToJson(const EvalReport &report) {
  nlohmann::json per_channel = nlohmann::json::object();
  for (size_t c = 0; c < report.per_channel_pcc.size(); ++c)
    per_channel[report.channel_names[c]] = report.per_channel_pcc[c];
  nlohmann::json j = {{"per_speaker_pcc", report.per_speaker_pcc},
                      {"per_speaker_rmse_mm", report.per_speaker_rmse_mm},
                      {"total_pcc", report.total_pcc},
                      {"total_rmse_mm", report.total_rmse_mm},
                      {"per_channel_pcc", per_channel},
                      {"utterances", report.utterances}};
  return j.dump(2) + "\n";
}

std::string PerChannelCsv(const EvalReport &report) {
  std::string out = "channel,pcc\n";
  char buf[64];
  for (size_t c = 0; c < report.per_channel_pcc.size(); ++c) {
    std::snprintf(buf, sizeof(buf), ",%.17g\n", report.per_channel_pcc[c]);
    out += report.channel_names[c] + buf;
  }
  return out;
}

}  // namespace artic
