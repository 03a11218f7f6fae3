// Copyright 2026 The LIiC Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Precision-recall curves, restricted AUC, F1-optimal thresholds, P/R/F1,
// the lemma baseline and expected validation performance.

#ifndef LIIC_EVALUATION_H_
#define LIIC_EVALUATION_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "json.hpp"
#include "liic/datamodel.h"

namespace liic {

struct PrPoint {
  double precision = 0.0;
  double recall = 0.0;
  double threshold = 0.0;
};

// Points sorted by descending threshold. A point's threshold is a score
// value; instances with score >= threshold count as predicted positive.
struct PrCurve {
  std::vector<PrPoint> points;
};

// One point per distinct score. Throws ContractError on length mismatch,
// non-binary labels, or when no label is positive.
PrCurve ComputePrCurve(std::span<const double> scores, std::span<const int> labels);

// Trapezoidal area over recall restricted to precision >= min_precision.
// With `interpolate`, the curve is treated as piecewise linear between
// consecutive points and segments crossing the cutoff are split at the
// crossing. Without it, qualifying points are filtered and integrated as-is.
// Not normalized.
double AucRestricted(const PrCurve& curve, double min_precision = 0.5, bool interpolate = true);

struct ThresholdChoice {
  double threshold = 0.0;
  double f1 = 0.0;
};

// Scans midpoints between consecutive distinct sorted scores plus one
// sentinel below the minimum and one above the maximum. Predictions are
// score > threshold. Ties go to the larger threshold.
ThresholdChoice TuneThreshold(std::span<const double> scores, std::span<const int> labels);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
};

struct Prf1Result {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  ConfusionCounts counts;
  // Set when nothing was predicted positive; precision is then reported as 0.
  bool no_predicted_positives = false;
};

Prf1Result Prf1(std::span<const int> predictions, std::span<const int> labels);

struct RunMetrics {
  double auc_restricted = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double threshold = 0.0;
  ConfusionCounts counts;
  bool no_predicted_positives = false;
};

// Full metrics for `scores` evaluated at `threshold` (score > threshold).
RunMetrics Evaluate(std::span<const double> scores, std::span<const int> labels, double threshold,
                    double min_precision = 0.5);

nlohmann::json MetricsToJson(const RunMetrics& m);
RunMetrics MetricsFromJson(const nlohmann::json& j);
void WritePrCurveCsv(const std::filesystem::path& path, const PrCurve& curve);

struct LemmaDecision {
  int prediction = 0;
  bool fallback = false;  // a lemma was missing; last tokens were compared
};

// 1 iff the premise and hypothesis head lemmas agree (case-insensitive).
LemmaDecision LemmaBaseline(const EntailmentInstance& inst);

// Expected maximum of n draws with replacement from the empirical
// distribution of `run_scores`.
double ExpectedValidationPerformance(std::span<const double> run_scores, std::size_t n);

}  // namespace liic

#endif  // LIIC_EVALUATION_H_
