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

#include "liic/evaluation.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>

#include "liic/errors.h"

namespace liic {
namespace {

void CheckInputs(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw ContractError("scores and labels differ in length");
  for (int y : labels) {
    if (y != 0 && y != 1) throw ContractError("labels must be 0 or 1");
  }
}

double F1(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

std::string HeadWord(const VerbalExpression& expr) {
  std::string word = expr.lemma() ? expr.lemma()->substr(0, expr.lemma()->find(' ')) : expr.tokens().back();
  std::transform(word.begin(), word.end(), word.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return word;
}

}  // namespace

PrCurve ComputePrCurve(std::span<const double> scores, std::span<const int> labels) {
  CheckInputs(scores, labels);
  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  if (positives == 0) throw ContractError("recall is undefined without positive labels");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  PrCurve curve;
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double s = scores[order[i]];
    if (std::isnan(s)) throw ContractError("NaN score");
    if (labels[order[i]] == 1) ++tp; else ++fp;
    if (i + 1 < order.size() && scores[order[i + 1]] == s) continue;
    curve.points.push_back({static_cast<double>(tp) / static_cast<double>(tp + fp),
                            static_cast<double>(tp) / static_cast<double>(positives), s});
  }
  return curve;
}

double AucRestricted(const PrCurve& curve, double min_precision, bool interpolate) {
  const auto& pts = curve.points;
  double area = 0.0;
  if (!interpolate) {
    const PrPoint* prev = nullptr;
    for (const auto& p : pts) {
      if (p.precision < min_precision) continue;
      if (prev != nullptr) area += (p.recall - prev->recall) * (p.precision + prev->precision) / 2.0;
      prev = &p;
    }
    return area;
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const PrPoint& a = pts[i - 1];
    const PrPoint& b = pts[i];
    const bool a_in = a.precision >= min_precision;
    const bool b_in = b.precision >= min_precision;
    const double width = b.recall - a.recall;
    if (a_in && b_in) {
      area += width * (a.precision + b.precision) / 2.0;
    } else if (a_in != b_in) {
      // Linear crossing of the cutoff inside the segment.
      const double t = (min_precision - a.precision) / (b.precision - a.precision);
      const double r_cross = a.recall + t * width;
      if (a_in) {
        area += (r_cross - a.recall) * (a.precision + min_precision) / 2.0;
      } else {
        area += (b.recall - r_cross) * (min_precision + b.precision) / 2.0;
      }
    }
  }
  return area;
}

ThresholdChoice TuneThreshold(std::span<const double> scores, std::span<const int> labels) {
  CheckInputs(scores, labels);
  if (scores.empty()) throw ContractError("cannot tune a threshold on an empty set");
  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  if (positives == 0) throw ContractError("cannot tune a threshold without positive labels");

  std::vector<std::pair<double, int>> sorted;
  sorted.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) sorted.emplace_back(scores[i], labels[i]);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  const double inf = std::numeric_limits<double>::infinity();
  // Above-max sentinel: nothing predicted positive, F1 = 0.
  ThresholdChoice best{std::nextafter(sorted.front().first, inf), 0.0};
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].second == 1) ++tp; else ++fp;
    if (i + 1 < sorted.size() && sorted[i + 1].first == sorted[i].first) continue;
    const double threshold = i + 1 < sorted.size() ? sorted[i].first / 2.0 + sorted[i + 1].first / 2.0
                                                   : std::nextafter(sorted[i].first, -inf);
    const double p = static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double r = static_cast<double>(tp) / static_cast<double>(positives);
    const double f1 = F1(p, r);
    // Thresholds decrease along the scan, so only a strict gain moves it.
    if (f1 > best.f1) best = {threshold, f1};
  }
  return best;
}

Prf1Result Prf1(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size()) throw ContractError("predictions and labels differ in length");
  Prf1Result r;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int p = predictions[i];
    const int y = labels[i];
    if ((p != 0 && p != 1) || (y != 0 && y != 1)) throw ContractError("predictions and labels must be 0 or 1");
    if (p == 1 && y == 1) ++r.counts.tp;
    else if (p == 1) ++r.counts.fp;
    else if (y == 1) ++r.counts.fn;
    else ++r.counts.tn;
  }
  const std::size_t predicted = r.counts.tp + r.counts.fp;
  const std::size_t actual = r.counts.tp + r.counts.fn;
  r.no_predicted_positives = predicted == 0;
  r.precision = predicted == 0 ? 0.0 : static_cast<double>(r.counts.tp) / static_cast<double>(predicted);
  r.recall = actual == 0 ? 0.0 : static_cast<double>(r.counts.tp) / static_cast<double>(actual);
  r.f1 = F1(r.precision, r.recall);
  return r;
}

RunMetrics Evaluate(std::span<const double> scores, std::span<const int> labels, double threshold,
                    double min_precision) {
  CheckInputs(scores, labels);
  std::vector<int> predictions(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) predictions[i] = scores[i] > threshold ? 1 : 0;
  const Prf1Result prf = Prf1(predictions, labels);
  RunMetrics m;
  m.precision = prf.precision;
  m.recall = prf.recall;
  m.f1 = prf.f1;
  m.counts = prf.counts;
  m.no_predicted_positives = prf.no_predicted_positives;
  m.threshold = threshold;
  if (std::count(labels.begin(), labels.end(), 1) > 0) {
    m.auc_restricted = AucRestricted(ComputePrCurve(scores, labels), min_precision);
  }
  return m;
}

nlohmann::json MetricsToJson(const RunMetrics& m) {
  return {{"auc", m.auc_restricted},
          {"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1},
          {"threshold", m.threshold},
          {"no_predicted_positives", m.no_predicted_positives},
          {"counts", {{"tp", m.counts.tp}, {"fp", m.counts.fp}, {"fn", m.counts.fn}, {"tn", m.counts.tn}}}};
}

RunMetrics MetricsFromJson(const nlohmann::json& j) {
  RunMetrics m;
  m.auc_restricted = j.at("auc").get<double>();
  m.precision = j.at("precision").get<double>();
  m.recall = j.at("recall").get<double>();
  m.f1 = j.at("f1").get<double>();
  m.threshold = j.at("threshold").get<double>();
  m.no_predicted_positives = j.value("no_predicted_positives", false);
  const auto& c = j.at("counts");
  m.counts = {c.at("tp").get<std::size_t>(), c.at("fp").get<std::size_t>(), c.at("fn").get<std::size_t>(),
              c.at("tn").get<std::size_t>()};
  return m;
}

void WritePrCurveCsv(const std::filesystem::path& path, const PrCurve& curve) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << "threshold,precision,recall\n" << std::setprecision(17);
  for (const auto& p : curve.points) out << p.threshold << ',' << p.precision << ',' << p.recall << '\n';
}

LemmaDecision LemmaBaseline(const EntailmentInstance& inst) {
  LemmaDecision d;
  d.fallback = !inst.prem.lemma() || !inst.hypo.lemma();
  if (d.fallback) {
    VerbalExpression prem(inst.prem.tokens());
    VerbalExpression hypo(inst.hypo.tokens());
    d.prediction = HeadWord(prem) == HeadWord(hypo) ? 1 : 0;
  } else {
    d.prediction = HeadWord(inst.prem) == HeadWord(inst.hypo) ? 1 : 0;
  }
  return d;
}

double ExpectedValidationPerformance(std::span<const double> run_scores, std::size_t n) {
  if (run_scores.empty()) throw ContractError("expected validation performance needs at least one score");
  if (n < 1) throw ContractError("expected validation performance needs n >= 1");
  std::vector<double> v(run_scores.begin(), run_scores.end());
  std::sort(v.begin(), v.end());
  const double total = static_cast<double>(v.size());
  const double exponent = static_cast<double>(n);
  double expected = 0.0;
  double prev_cdf_n = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i + 1 < v.size() && v[i + 1] == v[i]) continue;
    const double cdf_n = std::pow(static_cast<double>(i + 1) / total, exponent);
    expected += v[i] * (cdf_n - prev_cdf_n);
    prev_cdf_n = cdf_n;
  }
  return expected;
}

}  // namespace liic
