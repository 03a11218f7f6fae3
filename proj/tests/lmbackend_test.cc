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

#include "liic/lmbackend.h"

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numeric>

#include "liic/errors.h"
#include "liic/mock_backend.h"
#include "oracles.h"

namespace liic {
namespace {

HeadParams SmallHead() {
  HeadParams p = HeadParams::Zeros(2);
  p.w1 = {1.0, 0.0, 0.0, 1.0};
  p.b1 = {0.0, 0.5};
  p.w2 = {1.0, -1.0, 0.5, 0.5};
  p.b2 = {0.1, -0.1};
  return p;
}

TEST(HeadForwardTest, HandComputedProbabilities) {
  const HeadParams p = SmallHead();
  AggregateRepr r{{0.3, -0.2}, false};
  const double h0 = std::tanh(0.3), h1 = std::tanh(-0.2 + 0.5);
  const double z0 = h0 * 1.0 + h1 * 0.5 + 0.1;
  const double z1 = h0 * -1.0 + h1 * 0.5 - 0.1;
  const double p1 = std::exp(z1) / (std::exp(z0) + std::exp(z1));
  const Probs probs = HeadForward(r, p);
  EXPECT_NEAR(probs.p1, p1, 1e-15);
  EXPECT_NEAR(probs.p0 + probs.p1, 1.0, 1e-15);
  EXPECT_EQ(probs[1], probs.p1);
}

TEST(HeadForwardTest, DropoutOnlyWithRng) {
  HeadParams p = HeadParams::Initialize(8, 1);
  p.dropout_p = 0.5;
  AggregateRepr r{std::vector<double>(8, 0.4), false};
  const Probs eval1 = HeadForward(r, p);
  const Probs eval2 = HeadForward(r, p);
  EXPECT_EQ(eval1.p1, eval2.p1);
  Rng rng(3);
  bool differs = false;
  for (int i = 0; i < 20; ++i) differs |= HeadForward(r, p, &rng).p1 != eval1.p1;
  EXPECT_TRUE(differs);
}

TEST(HeadForwardTest, NonFiniteInputThrows) {
  HeadParams p = SmallHead();
  p.w2[0] = std::nan("");
  EXPECT_THROW(HeadForward(AggregateRepr{{0.1, 0.1}, false}, p), NumericError);
}

TEST(HeadParamsTest, InitializeIsOrthogonalAndSeeded) {
  const HeadParams p = HeadParams::Initialize(6, 9);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t k = 0; k < 6; ++k) {
      double dot = 0;
      for (std::size_t j = 0; j < 6; ++j) dot += p.w1_at(i, j) * p.w1_at(k, j);
      EXPECT_NEAR(dot, i == k ? 1.0 : 0.0, 1e-12);
    }
  }
  EXPECT_EQ(p.w1_origin, ParamOrigin::kPretrained);
  EXPECT_EQ(p.w2_origin, ParamOrigin::kFresh);
  EXPECT_EQ(HeadParams::Initialize(6, 9).w2, p.w2);
  EXPECT_NE(HeadParams::Initialize(6, 10).w2, p.w2);
}

TEST(HeadParamsTest, FlattenAssignAndJsonRoundTrip) {
  const HeadParams p = HeadParams::Initialize(4, 2);
  std::vector<double> flat(p.num_parameters());
  p.Flatten(flat);
  HeadParams q = HeadParams::Zeros(4);
  q.Assign(flat);
  EXPECT_EQ(q.w1, p.w1);
  EXPECT_EQ(q.w2, p.w2);
  const HeadParams r = HeadParams::FromJson(p.ToJson());
  EXPECT_EQ(r.w1, p.w1);
  EXPECT_EQ(r.b2, p.b2);
  EXPECT_EQ(r.dropout_p, p.dropout_p);
  EXPECT_THROW(q.Assign(std::vector<double>(3)), ContractError);
}

TEST(HeadLossTest, ClampedTermHasZeroGradient) {
  HeadParams p = SmallHead();
  p.b2 = {100.0, -100.0};
  HeadParams grad = HeadParams::Zeros(2);
  const LossTerm t = HeadLossAndGradient(AggregateRepr{{0.0, 0.0}, false}, p, 1, 1.0, nullptr, grad, {});
  EXPECT_TRUE(t.clamped);
  EXPECT_NEAR(t.loss, -std::log(kLogClamp), 1e-9);
  for (double g : grad.b2) EXPECT_EQ(g, 0.0);
}

TEST(AdamTest, MatchesHandSteppedReference) {
  std::vector<double> params{0.5, -1.0};
  const std::vector<double> grads{0.2, -0.4};
  AdamState state;
  AdamUpdate(params, grads, state, 0.1, 0.01);
  // Step 1: m_hat = g, v_hat = g^2, so the update is lr * (sign(g) * |g| / (|g| + eps) + wd * p).
  const double expected0 = 0.5 - 0.1 * (0.2 / (0.2 + 1e-8) + 0.01 * 0.5);
  const double expected1 = -1.0 - 0.1 * (-0.4 / (0.4 + 1e-8) + 0.01 * -1.0);
  EXPECT_NEAR(params[0], expected0, 1e-15);
  EXPECT_NEAR(params[1], expected1, 1e-15);
  // Step 2 by hand.
  const std::vector<double> g2{0.1, 0.3};
  std::vector<double> ref = params;
  AdamUpdate(params, g2, state, 0.05, 0.0);
  for (int i = 0; i < 2; ++i) {
    const double m = 0.9 * (0.1 * grads[i]) + 0.1 * g2[i];
    const double v = 0.999 * (0.001 * grads[i] * grads[i]) + 0.001 * g2[i] * g2[i];
    const double mh = m / (1 - 0.9 * 0.9), vh = v / (1 - 0.999 * 0.999);
    EXPECT_NEAR(params[i], ref[i] - 0.05 * mh / (std::sqrt(vh) + 1e-8), 1e-14);
  }
  EXPECT_EQ(state.step, 2);
  EXPECT_THROW(AdamUpdate(params, g2, state, -1.0, 0.0), ContractError);
}

std::shared_ptr<MockBackend> SmallMock(std::size_t dim = 6) {
  MockBackend::Options o;
  o.dim = dim;
  o.seed = 4;
  return std::make_shared<MockBackend>(o);
}

TEST(SequenceClassifierTest, GradientMatchesFiniteDifferences) {
  auto backend = SmallMock();
  HeadParams head = HeadParams::Initialize(6, 5);
  head.dropout_p = 0.0;
  for (auto& w : head.w2) w *= 20.0;
  SequenceClassifier model(backend, head);
  const std::vector<WeightedExample> batch{
      {TextInput::Pair("Alice bought the house", "Alice owns the house"), 1, 1.0},
      {TextInput::Single("Bob sold it, which means that Bob owns it."), 0, 0.5},
  };
  std::vector<TextInput> inputs;
  for (const auto& ex : batch) inputs.push_back(ex.input);
  model.mutable_backend().PrepareTraining(inputs);
  ASSERT_GT(model.num_parameters(), head.num_parameters());

  std::vector<double> grad(model.num_parameters(), 0.0);
  model.AccumulateGradient(batch, grad, nullptr);
  const auto numeric = oracle::NumericGradient(
      [&](const std::vector<double>& x) {
        SequenceClassifier probe = model.Clone();
        probe.SetParameters(x);
        return probe.Loss(batch).loss;
      },
      model.Parameters());
  for (std::size_t i = 0; i < grad.size(); ++i) {
    EXPECT_LE(oracle::RelativeError(grad[i], numeric[i]), 1e-4) << "parameter " << i;
  }
}

TEST(SequenceClassifierTest, AccumulationEqualsConcatenatedBatch) {
  auto backend = SmallMock();
  HeadParams head = HeadParams::Initialize(6, 5);
  SequenceClassifier model(backend, head);
  const std::vector<WeightedExample> a{{TextInput::Single("one two"), 1, 1.0}};
  const std::vector<WeightedExample> b{{TextInput::Single("three four"), 0, 1.0},
                                       {TextInput::Single("five"), 1, 0.25}};
  std::vector<WeightedExample> both = a;
  both.insert(both.end(), b.begin(), b.end());
  model.mutable_backend().PrepareTraining(std::vector<TextInput>{both[0].input, both[1].input, both[2].input});
  std::vector<double> g1(model.num_parameters(), 0.0), g2(model.num_parameters(), 0.0);
  model.AccumulateGradient(a, g1, nullptr);
  model.AccumulateGradient(b, g1, nullptr);
  model.AccumulateGradient(both, g2, nullptr);
  for (std::size_t i = 0; i < g1.size(); ++i) EXPECT_NEAR(g1[i], g2[i], 1e-12);
}

TEST(TrainStepTest, ZeroLearningRateLeavesParameters) {
  SequenceClassifier model(SmallMock(), HeadParams::Initialize(6, 1));
  const std::vector<WeightedExample> batch{{TextInput::Single("a b c"), 1, 1.0}};
  model.mutable_backend().PrepareTraining(std::vector<TextInput>{batch[0].input});
  const auto before = model.Parameters();
  AdamState state;
  Rng rng(0);
  TrainStep(model, batch, state, 0.0, 0.1, &rng);
  EXPECT_EQ(model.Parameters(), before);
}

TEST(TrainStepTest, LossDecreasesOnRepeatedSteps) {
  SequenceClassifier model(SmallMock(), HeadParams::Initialize(6, 1));
  const std::vector<WeightedExample> batch{{TextInput::Single("good thing"), 1, 1.0},
                                           {TextInput::Single("bad thing"), 0, 1.0}};
  model.mutable_backend().PrepareTraining(std::vector<TextInput>{batch[0].input, batch[1].input});
  const double initial = model.Loss(batch).loss;
  AdamState state;
  StepResult last;
  for (int i = 0; i < 50; ++i) last = TrainStep(model, batch, state, 0.05, 0.0, nullptr);
  EXPECT_LT(model.Loss(batch).loss, initial / 4);
  EXPECT_NEAR(last.mean_loss, last.sum_loss / 2, 1e-15);
}

TEST(TrainStepTest, NonFiniteLossThrowsBeforeUpdate) {
  HeadParams head = HeadParams::Initialize(6, 1);
  head.b2[0] = std::numeric_limits<double>::infinity();
  SequenceClassifier model(SmallMock(), head);
  const auto before = model.Parameters();
  AdamState state;
  const std::vector<WeightedExample> batch{{TextInput::Single("x"), 1, 1.0}};
  EXPECT_THROW(TrainStep(model, batch, state, 0.1, 0.0, nullptr), NumericError);
  const auto after = model.Parameters();
  EXPECT_TRUE(std::equal(before.begin(), before.end(), after.begin(),
                         [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); }));
}

TEST(ValidateMaskQueryTest, RequiresExactlyOneMask) {
  EXPECT_NO_THROW(ValidateMaskQuery({"a <mask> b", 5}, "<mask>"));
  EXPECT_THROW(ValidateMaskQuery({"a b", 5}, "<mask>"), ContractError);
  EXPECT_THROW(ValidateMaskQuery({"<mask> <mask>", 5}, "<mask>"), ContractError);
  EXPECT_THROW(ValidateMaskQuery({"a <mask>", 0}, "<mask>"), ContractError);
}

}  // namespace
}  // namespace liic
