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

// Pattern-based entailment scoring.
//
// A pattern is a sentence template with slots for the premise and hypothesis
// expressions and, optionally, their arguments. Instantiating every pattern
// with an inference candidate gives utterances whose felicity the head
// estimates. Patterns (Phi) should sound felicitous for valid entailments,
// antipatterns (Psi) for invalid ones. The score is
//
//   s = m_pos - m_neg,  m_pos = max_Phi P_fel(z=1 | phi(x1, x2))
//
// where m_neg is max_Psi P_fel(z=1 | psi(x1, x2)) with antipatterns, or
// max_Phi P_fel(z=0 | phi(x1, x2)) with patterns only.
//
// Pattern file format, one record per line, '#' starts a comment line:
//
//   <pattern|antipattern> TAB <manual|auto|auto_curated|auto_arg> TAB <template>
//
// Ranked pattern files append TAB <points>.

#ifndef LIIC_PATTERN_APPROACH_H_
#define LIIC_PATTERN_APPROACH_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "liic/datamodel.h"
#include "liic/lmbackend.h"

namespace liic {

enum class Slot { kPrem, kHypo, kPremNeg, kHypoNeg, kPargl, kPargr, kHargl, kHargr };
inline constexpr std::size_t kNumSlots = 8;

std::string_view SlotName(Slot slot);  // "PREM", "HYPO_NEG", ...

enum class Polarity { kPattern, kAntipattern };
enum class Origin { kManual, kAuto, kAutoCurated, kAutoArg };
enum class ScoringMode { kPhiPsi, kPhiOnly };

std::string_view PolarityName(Polarity p);
std::string_view OriginName(Origin o);
std::string_view ScoringModeName(ScoringMode m);
Polarity ParsePolarity(std::string_view name);
Origin ParseOrigin(std::string_view name);
ScoringMode ParseScoringMode(std::string_view name);

// Filler per slot, indexed by Slot. Unset means "not provided".
using SlotFillers = std::array<std::optional<std::string>, kNumSlots>;

class Pattern {
 public:
  struct Piece {
    std::string literal;
    std::optional<Slot> slot;
  };

  // Throws TemplateError unless the template has a premise verb slot and a
  // hypothesis verb slot, uses each slot at most once, and never combines a
  // plain slot with its negated twin.
  Pattern(std::string template_text, Polarity polarity, Origin origin);

  const std::string& template_text() const { return template_; }
  Polarity polarity() const { return polarity_; }
  Origin origin() const { return origin_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  bool HasSlot(Slot slot) const;
  bool HasArgumentSlots() const;

  // Replaces every slot. Throws TemplateError naming the first slot without a
  // filler. Byte-exact when every filler is non-empty; an empty filler also
  // swallows one adjacent space and the result is trimmed.
  std::string Fill(const SlotFillers& fillers) const;

  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.template_ == b.template_ && a.polarity_ == b.polarity_ && a.origin_ == b.origin_;
  }

 private:
  std::string template_;
  Polarity polarity_;
  Origin origin_;
  std::vector<Piece> pieces_;
};

// Negated surface form of an expression. If the first token is an auxiliary
// or copula (is, are, was, were, has, have, had, can, could, will, would, may,
// might, must, does, do, did), "not" goes right after it. Otherwise the result
// is "does not" followed by the expression with its first token replaced by
// the lemma's head word when a lemma is known.
std::string NegateExpression(const VerbalExpression& expr);

// Fillers for all eight slots taken from an instance.
SlotFillers InstanceFillers(const EntailmentInstance& inst);
std::string Instantiate(const Pattern& pattern, const EntailmentInstance& inst);

struct PatternSet {
  std::vector<Pattern> patterns;
  std::vector<Pattern> antipatterns;
  ScoringMode mode = ScoringMode::kPhiPsi;
  // Dataset the patterns were mined from; empty for handcrafted sets.
  std::string mined_on;

  // Throws ContractError on an empty Phi, a polarity mismatch, or phi_psi mode
  // without antipatterns.
  void Validate() const;
  // Stable content hash (hex) over mode and templates.
  std::string Hash() const;
};

struct ScoreResult {
  double s = 0.0;
  double m_pos = 0.0;
  double m_neg = 0.0;
  std::size_t pos_argmax = 0;  // index into Phi
  std::size_t neg_argmax = 0;  // index into Psi (phi_psi) or Phi (phi_only)
};

// Max algebra over felicity probabilities P(z=1). Ties report the lowest index.
ScoreResult CombineScores(std::span<const double> pattern_probs, std::span<const double> antipattern_probs,
                          ScoringMode mode);

// 1 iff s > threshold (strict).
int DecidePat(double s, double threshold);

inline constexpr double kStandardPatternThreshold = 0.0;

class PatternModel {
 public:
  PatternModel(SequenceClassifier classifier, PatternSet patterns,
               double threshold = kStandardPatternThreshold);

  double PFel(const std::string& sentence) const;
  ScoreResult ScoreDetailed(const EntailmentInstance& inst) const;
  double Score(const EntailmentInstance& inst) const { return ScoreDetailed(inst).s; }
  int Decide(const EntailmentInstance& inst, double threshold) const;
  int Decide(const EntailmentInstance& inst) const { return Decide(inst, threshold_); }

  double threshold() const { return threshold_; }
  // Throws ContractError outside [-1, 1].
  void set_threshold(double threshold);

  const PatternSet& pattern_set() const { return patterns_; }
  void set_pattern_set(PatternSet patterns);

  const SequenceClassifier& classifier() const { return classifier_; }
  SequenceClassifier& mutable_classifier() { return classifier_; }

 private:
  SequenceClassifier classifier_;
  PatternSet patterns_;
  double threshold_;
};

// Weighted NLL terms for one labeled instance:
//   Phi with target y and weight 1/|Phi|, Psi with target 1-y and weight 1/|Psi|
// (Psi only in phi_psi mode; an empty side contributes nothing).
std::vector<WeightedExample> PatternTrainingExamples(const PatternSet& patterns,
                                                     const EntailmentInstance& inst, int y);

// Sum over the batch of L_Phi(x, y) + L_Psi(x, 1 - y), labels from the instances.
LossResult LossPat(const PatternModel& model, std::span<const EntailmentInstance> batch);
LossResult LossPat(const SequenceClassifier& classifier, const PatternSet& patterns,
                   std::span<const EntailmentInstance> batch);

// Consecutive chunks of at most chunk_size patterns and antipatterns; chunk i
// pairs the i-th Phi chunk with the i-th Psi chunk (either may be empty).
std::vector<PatternSet> ChunkedTrainingView(const PatternSet& patterns, std::size_t chunk_size = 5);

struct PatternRecord {
  Pattern pattern;
  std::optional<long long> points;
  std::size_t line = 0;
};

std::vector<PatternRecord> ReadPatternRecords(std::istream& in);
std::vector<PatternRecord> LoadPatternRecords(const std::filesystem::path& path);
std::string FormatPatternRecord(const Pattern& pattern, std::optional<long long> points = std::nullopt);

// Splits records by polarity. The set is not validated so that fragments can
// be loaded.
PatternSet ToPatternSet(std::span<const PatternRecord> records, ScoringMode mode);
PatternSet LoadPatternFile(const std::filesystem::path& path, ScoringMode mode);
void SavePatternFile(const std::filesystem::path& path, const PatternSet& patterns);

// The shipped handcrafted set: four patterns and two antipatterns.
PatternSet DefaultManualPatterns(ScoringMode mode = ScoringMode::kPhiPsi);

}  // namespace liic

#endif  // LIIC_PATTERN_APPROACH_H_
