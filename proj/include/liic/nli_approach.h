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

// Sequence-pair entailment classifier: the premise and hypothesis sentences
// are encoded as one pair and the head predicts P(entailment).

#ifndef LIIC_NLI_APPROACH_H_
#define LIIC_NLI_APPROACH_H_

#include <span>
#include <string>
#include <vector>

#include "liic/datamodel.h"
#include "liic/lmbackend.h"

namespace liic {

inline constexpr double kStandardNliThreshold = 0.5;

struct NliExample {
  std::string premise;
  std::string hypothesis;
  int label = 0;
};

// 1 iff p > threshold (strict).
int DecideNli(double p, double threshold);

class NliModel {
 public:
  explicit NliModel(SequenceClassifier classifier, double threshold = kStandardNliThreshold);

  double PNli(const std::string& premise, const std::string& hypothesis) const;
  double Score(const EntailmentInstance& inst) const;
  int Decide(const std::string& premise, const std::string& hypothesis, double threshold) const;
  int Decide(const EntailmentInstance& inst) const;

  double threshold() const { return threshold_; }
  // Throws ContractError outside [0, 1].
  void set_threshold(double threshold);

  const SequenceClassifier& classifier() const { return classifier_; }
  SequenceClassifier& mutable_classifier() { return classifier_; }

  static NliExample ToExample(const EntailmentInstance& inst);
  static WeightedExample ToWeighted(const NliExample& example);

 private:
  SequenceClassifier classifier_;
  double threshold_;
};

// Sum over the batch of -log P(y | premise, hypothesis); probabilities below
// kLogClamp are clamped and counted.
LossResult LossNli(const NliModel& model, std::span<const NliExample> batch);

}  // namespace liic

#endif  // LIIC_NLI_APPROACH_H_
