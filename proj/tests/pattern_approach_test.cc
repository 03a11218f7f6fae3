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

#include "liic/pattern_approach.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "liic/errors.h"
#include "liic/mock_backend.h"
#include "liic/random.h"
#include "test_util.h"

namespace liic {
namespace {

using testing::MakeInstance;
using testing::ProbabilityHead;
using testing::StubBackend;

Pattern Pat(const char* t) { return Pattern(t, Polarity::kPattern, Origin::kManual); }
Pattern Anti(const char* t) { return Pattern(t, Polarity::kAntipattern, Origin::kManual); }

TEST(PatternTest, InstantiatesBecauseTemplate) {
  const auto inst = MakeInstance("x", {"was", "beaten", "by"}, {"fought"}, "Pyrrhus", "the romans", 1);
  EXPECT_EQ(Instantiate(Pat("{HARGL} {HYPO} {HARGR} because {PARGL} {PREM} {PARGR}"), inst),
            "Pyrrhus fought the romans because Pyrrhus was beaten by the romans");
}

TEST(PatternTest, NegatedSlots) {
  const auto inst = MakeInstance("x", {"is", "occupying"}, {"controls"}, "Germany", "Togo", 1);
  EXPECT_EQ(Instantiate(Pat("{PARGL} {PREM_NEG} {PARGR} because {HARGL} {HYPO_NEG} {HARGR}."), inst),
            "Germany is not occupying Togo because Germany does not controls Togo.");
  EXPECT_EQ(NegateExpression(VerbalExpression({"owns"})), "does not owns");
}

TEST(PatternTest, EmptyArgumentsCollapse) {
  SlotFillers f;
  f[static_cast<std::size_t>(Slot::kPrem)] = "bought";
  f[static_cast<std::size_t>(Slot::kHypo)] = "owns";
  for (Slot s : {Slot::kPargl, Slot::kPargr, Slot::kHargl, Slot::kHargr}) f[static_cast<std::size_t>(s)] = "";
  EXPECT_EQ(Pat("{PARGL} {PREM} {PARGR} so {HARGL} {HYPO} {HARGR}").Fill(f), "bought so owns");
}

TEST(PatternTest, TemplateErrors) {
  EXPECT_THROW(Pat("{PREM} only"), TemplateError);
  EXPECT_THROW(Pat("{PREM} {HYPO} {PREM}"), TemplateError);
  EXPECT_THROW(Pat("{PREM} {PREM_NEG} {HYPO}"), TemplateError);
  EXPECT_EQ(Pat("{PREM} {HYPO} {other}").pieces().back().literal, " {other}");
  SlotFillers f;
  f[static_cast<std::size_t>(Slot::kPrem)] = "a";
  try {
    Pat("{PREM} and {HYPO}").Fill(f);
    FAIL();
  } catch (const TemplateError& e) {
    EXPECT_NE(std::string(e.what()).find("HYPO"), std::string::npos);
  }
}

TEST(CombineScoresTest, Examples) {
  const std::vector<double> phi{0.9, 0.4}, psi{0.2};
  const ScoreResult r = CombineScores(phi, psi, ScoringMode::kPhiPsi);
  EXPECT_NEAR(r.s, 0.7, 1e-15);
  EXPECT_EQ(r.pos_argmax, 0u);

  const std::vector<double> phi2{0.8, 0.3};
  const ScoreResult o = CombineScores(phi2, {}, ScoringMode::kPhiOnly);
  EXPECT_DOUBLE_EQ(o.m_pos, 0.8);
  EXPECT_DOUBLE_EQ(o.m_neg, 0.7);
  EXPECT_NEAR(o.s, 0.1, 1e-15);
  EXPECT_EQ(o.neg_argmax, 1u);

  const std::vector<double> half{0.5};
  EXPECT_EQ(CombineScores(half, {}, ScoringMode::kPhiOnly).s, 0.0);
}

TEST(CombineScoresTest, RandomAlgebra) {
  Rng rng(7);
  for (int t = 0; t < 2000; ++t) {
    std::vector<double> phi(1 + rng.Below(6)), psi(1 + rng.Below(6));
    for (double& p : phi) p = rng.Uniform();
    for (double& p : psi) p = rng.Uniform();
    const ScoreResult r = CombineScores(phi, psi, ScoringMode::kPhiPsi);
    EXPECT_GE(r.s, -1.0);
    EXPECT_LE(r.s, 1.0);
    EXPECT_EQ(r.s, r.m_pos - r.m_neg);
    const double theta = 2 * rng.Uniform() - 1;
    EXPECT_EQ(DecidePat(r.s, theta) == 1, r.m_pos > r.m_neg + theta);

    auto more_phi = phi;
    more_phi.push_back(rng.Uniform());
    auto more_psi = psi;
    more_psi.push_back(rng.Uniform());
    EXPECT_GE(CombineScores(more_phi, psi, ScoringMode::kPhiPsi).m_pos, r.m_pos);
    EXPECT_GE(CombineScores(phi, more_psi, ScoringMode::kPhiPsi).m_neg, r.m_neg);

    const std::vector<double> single{phi[0]};
    EXPECT_NEAR(CombineScores(single, {}, ScoringMode::kPhiOnly).s, 2 * phi[0] - 1, 1e-15);
  }
}

TEST(DecidePatTest, Strict) {
  EXPECT_EQ(DecidePat(0.0, -0.0909), 1);
  EXPECT_EQ(DecidePat(0.25, 0.25), 0);
  EXPECT_EQ(DecidePat(0.01, 0.0), 1);
  EXPECT_EQ(DecidePat(0.0, 0.0), 0);
}

PatternSet TwoOne() {
  PatternSet set;
  set.patterns = {Pat("{PREM} so {HYPO}"), Pat("{HYPO} since {PREM}")};
  set.antipatterns = {Anti("{PREM} yet not {HYPO}")};
  return set;
}

TEST(PatternModelTest, ZeroHeadAndLoss) {
  PatternModel model(SequenceClassifier(std::make_shared<MockBackend>(), HeadParams::Zeros(16)), TwoOne());
  EXPECT_EQ(model.PFel("anything at all"), 0.5);
  EXPECT_EQ(model.PFel("x y"), model.PFel("x y"));
  const std::vector<EntailmentInstance> batch{MakeInstance("a", {"bought"}, {"owns"}, "A", "B", 1)};
  EXPECT_NEAR(LossPat(model, batch).loss, 2 * std::log(2.0), 1e-12);
  EXPECT_EQ(model.Score(batch[0]), 0.0);
  EXPECT_THROW(model.set_threshold(1.01), ContractError);
}

TEST(PatternModelTest, LossHandArithmetic) {
  auto backend = std::make_shared<StubBackend>();
  const auto inst = MakeInstance("a", {"bought"}, {"owns"}, "", "", 1);
  PatternSet set;
  set.mode = ScoringMode::kPhiOnly;
  set.patterns = {Pat("{PREM} so {HYPO}"), Pat("{HYPO} since {PREM}")};
  backend->SetProbability(TextInput::Single("bought so owns"), 0.9);
  backend->SetProbability(TextInput::Single("owns since bought"), 0.6);
  PatternModel model(SequenceClassifier(backend, ProbabilityHead()), set);
  const std::vector<EntailmentInstance> batch{inst};
  EXPECT_NEAR(LossPat(model, batch).loss, -(std::log(0.9) + std::log(0.6)) / 2, 1e-12);
  EXPECT_NEAR(model.Score(inst), 0.9 - 0.4, 1e-12);
}

TEST(PatternModelTest, CertainGoldGivesZeroLoss) {
  HeadParams head = HeadParams::Zeros(1);
  head.b2 = {-800.0, 800.0};
  PatternSet set = TwoOne();
  set.mode = ScoringMode::kPhiOnly;
  set.antipatterns.clear();
  PatternModel model(SequenceClassifier(std::make_shared<StubBackend>(), head), set);
  const std::vector<EntailmentInstance> batch{MakeInstance("a", {"bought"}, {"owns"}, "A", "B", 1)};
  EXPECT_EQ(LossPat(model, batch).loss, 0.0);
}

TEST(ChunkTest, Counts) {
  const auto make = [](std::size_t n) {
    PatternSet set;
    set.mode = ScoringMode::kPhiOnly;
    for (std::size_t i = 0; i < n; ++i)
      set.patterns.push_back(Pat(("{PREM} w" + std::to_string(i) + " {HYPO}").c_str()));
    return set;
  };
  EXPECT_EQ(ChunkedTrainingView(make(15)).size(), 3u);
  const auto one = ChunkedTrainingView(make(5));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].patterns, make(5).patterns);
  const auto two = ChunkedTrainingView(make(7));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].patterns.size(), 5u);
  EXPECT_EQ(two[1].patterns.size(), 2u);
  EXPECT_EQ(two[1].patterns[1], make(7).patterns[6]);
  EXPECT_THROW(ChunkedTrainingView(make(3), 0), ContractError);
}

TEST(ChunkTest, ReweightingIdentity) {
  MockBackend::Options o;
  o.dim = 8;
  PatternSet set;
  set.mode = ScoringMode::kPhiOnly;
  for (int i = 0; i < 7; ++i) set.patterns.push_back(Pat(("{PREM} v" + std::to_string(i) + " {HYPO}").c_str()));
  SequenceClassifier clf(std::make_shared<MockBackend>(o), HeadParams::Initialize(8, 3));
  const std::vector<EntailmentInstance> batch{MakeInstance("a", {"bought"}, {"owns"}, "A", "B", 1)};
  const double full = LossPat(clf, set, batch).loss;
  double sum = 0.0;
  for (const auto& chunk : ChunkedTrainingView(set, 5)) {
    sum += static_cast<double>(chunk.patterns.size()) / 7.0 * LossPat(clf, chunk, batch).loss;
  }
  EXPECT_NEAR(full, sum, 1e-12);
}

TEST(PatternFileTest, RoundTripAndErrors) {
  const PatternSet set = DefaultManualPatterns();
  set.Validate();
  EXPECT_EQ(set.patterns.size(), 4u);
  EXPECT_EQ(set.antipatterns.size(), 2u);
  std::ostringstream out;
  for (const auto& p : set.patterns) out << FormatPatternRecord(p) << '\n';
  for (const auto& p : set.antipatterns) out << FormatPatternRecord(p, 3) << '\n';
  std::istringstream in("# header\n" + out.str());
  const auto records = ReadPatternRecords(in);
  ASSERT_EQ(records.size(), 6u);
  EXPECT_EQ(records[4].points, 3);
  EXPECT_EQ(records[0].line, 2u);
  const PatternSet back = ToPatternSet(records, ScoringMode::kPhiPsi);
  EXPECT_EQ(back.patterns, set.patterns);
  EXPECT_EQ(back.antipatterns, set.antipatterns);
  EXPECT_EQ(back.Hash(), set.Hash());

  std::istringstream bad("pattern\tmanual\t{PREM} and {HYPO}\nsideways\tmanual\t{PREM} {HYPO}\n");
  try {
    ReadPatternRecords(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(PatternSetTest, Validation) {
  PatternSet empty;
  EXPECT_THROW(empty.Validate(), ContractError);
  PatternSet no_anti = TwoOne();
  no_anti.antipatterns.clear();
  EXPECT_THROW(no_anti.Validate(), ContractError);
  no_anti.mode = ScoringMode::kPhiOnly;
  EXPECT_NO_THROW(no_anti.Validate());
  PatternSet swapped = TwoOne();
  std::swap(swapped.patterns[0], swapped.antipatterns[0]);
  EXPECT_THROW(swapped.Validate(), ContractError);
}

TEST(PatternModelTest, ToyFamiliesSeparate) {
  MockBackend::Options o;
  o.dim = 8;
  auto backend = std::make_shared<MockBackend>(o);
  SequenceClassifier clf(backend, HeadParams::Initialize(8, 1));
  std::vector<WeightedExample> batch{{TextInput::Single("red apples grow sweetly"), 1, 1.0},
                                     {TextInput::Single("red apples grow tall"), 1, 1.0},
                                     {TextInput::Single("blue stones sink quietly"), 0, 1.0},
                                     {TextInput::Single("blue stones sink deep"), 0, 1.0}};
  std::vector<TextInput> inputs;
  for (const auto& b : batch) inputs.push_back(b.input);
  clf.mutable_backend().PrepareTraining(inputs);
  AdamState state;
  for (int i = 0; i < 200; ++i) TrainStep(clf, batch, state, 0.02, 0.0, nullptr);
  PatternModel model(clf, DefaultManualPatterns());
  EXPECT_GT(model.PFel("red apples grow sweetly"), 0.5);
  EXPECT_LT(model.PFel("blue stones sink deep"), 0.5);
}

}  // namespace
}  // namespace liic
