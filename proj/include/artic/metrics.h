// include/artic/metrics.h

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

#ifndef ARTIC_METRICS_H_
#define ARTIC_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "artic/ema.h"

namespace artic {

// Sample Pearson correlation. Throws kShapeMismatch on unequal lengths or
// fewer than two samples, kConstantInput when either side has zero variance.
double Pcc(std::span<const double> x, std::span<const double> y);

// sqrt(mean squared error) in millimetres after denormalising both inputs
// with |stats|. Shapes must agree. |stats_channels| maps each row to its
// channel in |stats| (empty: row c uses channel c, 18 rows required).
double RmseMm(const EmaRecording &predicted, const EmaRecording &reference,
              const NormalizationState &stats, std::span<const int> stats_channels = {});

// Predicted/reference pair for one utterance, both normalized, plus the stats
// of its speaker.
struct EvalItem {
  std::string speaker;
  std::string utt;
  EmaRecording predicted;
  EmaRecording reference;
  const NormalizationState *stats = nullptr;
  std::vector<int> stats_channels;  // see RmseMm
};

struct EvalReport {
  std::map<std::string, double> per_speaker_pcc;
  std::map<std::string, double> per_speaker_rmse_mm;
  double total_pcc = 0.0;
  double total_rmse_mm = 0.0;
  std::vector<double> per_channel_pcc;  // one per reference channel
  std::vector<std::string> channel_names;
  int utterances = 0;
};

// Aggregation: per utterance the channel PCCs are averaged (channels whose
// PCC is undefined are skipped), then utterances are averaged per speaker,
// then speakers are averaged for the total. RMSE is pooled over all frames
// and channels, per speaker and in total. |channel_names| labels the columns
// of the reference; empty means the 18-trace layout.
EvalReport Aggregate(std::span<const EvalItem> items,
                     std::vector<std::string> channel_names = {});

// Aligned text layout with one PCC column per speaker followed by the totals.
std::string FormatReportTable(const EvalReport &report, const std::string &model_name);
std::string ReportToJson(const EvalReport &report);
std::string PerChannelCsv(const EvalReport &report);

}  // namespace artic

#endif  // ARTIC_METRICS_H_
