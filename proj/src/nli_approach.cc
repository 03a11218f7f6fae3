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

#include "liic/nli_approach.h"

#include "liic/errors.h"

namespace liic {

int DecideNli(double p, double threshold) { return p > threshold ? 1 : 0; }

NliModel::NliModel(SequenceClassifier classifier, double threshold) : classifier_(std::move(classifier)) {
  set_threshold(threshold);
}

void NliModel::set_threshold(double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ContractError("NLI threshold must lie in [0, 1], got " + std::to_string(threshold));
  }
  threshold_ = threshold;
}

double NliModel::PNli(const std::string& premise, const std::string& hypothesis) const {
  return classifier_.Predict(TextInput::Pair(premise, hypothesis)).p1;
}

double NliModel::Score(const EntailmentInstance& inst) const {
  return PNli(inst.PremiseSentence(), inst.HypothesisSentence());
}

int NliModel::Decide(const std::string& premise, const std::string& hypothesis, double threshold) const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ContractError("NLI threshold must lie in [0, 1]");
  return DecideNli(PNli(premise, hypothesis), threshold);
}

int NliModel::Decide(const EntailmentInstance& inst) const { return DecideNli(Score(inst), threshold_); }

NliExample NliModel::ToExample(const EntailmentInstance& inst) {
  return {inst.PremiseSentence(), inst.HypothesisSentence(), inst.label};
}

WeightedExample NliModel::ToWeighted(const NliExample& example) {
  return {TextInput::Pair(example.premise, example.hypothesis), example.label, 1.0};
}

LossResult LossNli(const NliModel& model, std::span<const NliExample> batch) {
  std::vector<WeightedExample> weighted;
  weighted.reserve(batch.size());
  for (const auto& ex : batch) {
    if (ex.label != 0 && ex.label != 1) throw ContractError("labels must be 0 or 1");
    weighted.push_back(NliModel::ToWeighted(ex));
  }
  return model.classifier().Loss(weighted);
}

}  // namespace liic
