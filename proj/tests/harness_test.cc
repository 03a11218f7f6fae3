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

#include "liic/harness.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "liic/errors.h"
#include "liic/mining.h"
#include "liic/mock_backend.h"
#include "oracles.h"
#include "test_util.h"

namespace liic {
namespace {

namespace fs = std::filesystem;

const fs::path kToy = fs::path(LIIC_SOURCE_DIR) / "data" / "toy";

std::vector<EntailmentInstance> ToyDev() { return LoadDataset(kToy / "dev.jsonl", Source::kLevyHolt).instances; }

ModelFactory NliFactory(std::size_t dim = 16) {
  MockBackend::Options o;
  o.dim = dim;
  return [o] { return LiicModel(NliModel(SequenceClassifier(std::make_shared<MockBackend>(o), HeadParams::Initialize(o.dim, 0)))); };
}

LiicModel PatternLiic(PatternSet set, std::size_t dim = 16) {
  MockBackend::Options o;
  o.dim = dim;
  return LiicModel(PatternModel(SequenceClassifier(std::make_shared<MockBackend>(o), HeadParams::Initialize(dim, 0)),
                                std::move(set)));
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("liic_harness_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(SampleConfigsTest, RangesDeterminismAndLogUniformity) {
  const auto a = SampleConfigs(10000, 42);
  EXPECT_EQ(a, SampleConfigs(10000, 42));
  EXPECT_NE(a, SampleConfigs(10000, 43));
  std::vector<double> u;
  std::vector<int> accum_counts(kMaxGradAccum + 1, 0);
  for (const auto& c : a) {
    EXPECT_GE(c.lr, kMinLr);
    EXPECT_LE(c.lr, kMaxLr);
    EXPECT_GE(c.weight_decay, kMinWeightDecay);
    EXPECT_LE(c.weight_decay, kMaxWeightDecay);
    ASSERT_GE(c.grad_accum, 1);
    ASSERT_LE(c.grad_accum, kMaxGradAccum);
    ++accum_counts[c.grad_accum];
    EXPECT_EQ(c.epochs, 5);
    EXPECT_EQ(c.batch_size, 10u);
    u.push_back((std::log10(c.lr) - std::log10(kMinLr)) / (std::log10(kMaxLr) - std::log10(kMinLr)));
  }
  std::sort(u.begin(), u.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double n = static_cast<double>(u.size());
    ks = std::max({ks, std::abs((i + 1) / n - u[i]), std::abs(u[i] - i / n)});
  }
  EXPECT_LE(ks, 0.02);
  for (int c = 1; c <= kMaxGradAccum; ++c) EXPECT_GT(accum_counts[c], 800);
  EXPECT_EQ(SampleConfigs(3, 0, "large")[0].batch_size, 2u);
  EXPECT_THROW(SampleConfigs(3, 0, "huge"), ConfigError);
}

TEST(LrScheduleTest, LinearDecay) {
  EXPECT_EQ(LrSchedule(0, 100, 0.01), 0.01);
  EXPECT_EQ(LrSchedule(100, 100, 0.01), 0.0);
  EXPECT_DOUBLE_EQ(LrSchedule(50, 100, 0.01), 0.005);
  EXPECT_THROW(LrSchedule(101, 100, 0.01), ContractError);
  EXPECT_THROW(LrSchedule(-1, 100, 0.01), ContractError);
}

TEST(HyperConfigTest, KeyValuesAndJson) {
  std::istringstream in("# run\nlr = 0.001\nweight_decay=0.01\ngrad_accum = 4\nprofile = large\nseed = 9\n");
  const HyperConfig c = HyperConfigFromKeyValues(ReadKeyValues(in));
  EXPECT_EQ(c.lr, 0.001);
  EXPECT_EQ(c.weight_decay, 0.01);
  EXPECT_EQ(c.grad_accum, 4);
  EXPECT_EQ(c.batch_size, 2u);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(HyperConfig::FromJson(c.ToJson()), c);

  std::istringstream unknown("learning_rate = 1\n");
  EXPECT_THROW(HyperConfigFromKeyValues(ReadKeyValues(unknown)), ConfigError);
  std::istringstream malformed("lr 0.1\n");
  EXPECT_THROW(ReadKeyValues(malformed), ParseError);
  HyperConfig bad;
  bad.grad_accum = 11;
  EXPECT_THROW(bad.Validate(), ConfigError);
  bad = {};
  bad.lr = 0.5;
  EXPECT_THROW(bad.Validate(), ConfigError);
  bad = {};
  bad.lr = 0.0;
  EXPECT_NO_THROW(bad.Validate());
}

TEST(TrainTest, OptimizerStepsPerEpoch) {
  auto dev = ToyDev();
  dev.resize(40);
  HyperConfig c;
  c.epochs = 1;
  c.grad_accum = 2;
  LiicModel m = NliFactory()();
  EXPECT_EQ(Train(m, dev, c).optimizer_steps, 2);
  c.grad_accum = 3;
  c.epochs = 2;
  LiicModel m2 = NliFactory()();
  const TrainOutcome out = Train(m2, dev, c);
  EXPECT_EQ(out.optimizer_steps, 4);
  EXPECT_EQ(out.epoch_losses.size(), 2u);
  EXPECT_TRUE(out.completed);
}

TEST(TrainTest, ZeroLearningRateIsNoOp) {
  const auto dev = ToyDev();
  HyperConfig c;
  c.lr = 0.0;
  c.epochs = 1;
  LiicModel m = NliFactory()();
  m.mutable_classifier().mutable_backend().PrepareTraining({});
  LiicModel reference = m.Clone();
  Train(m, dev, c);
  for (const auto& inst : dev) EXPECT_EQ(m.Score(inst), reference.Score(inst));
  EXPECT_EQ(m.classifier().head().w2, reference.classifier().head().w2);
}

TEST(TrainTest, FitsSmallSeparableSet) {
  auto dev = ToyDev();
  dev.resize(16);
  HyperConfig c;
  c.lr = 2e-2;
  c.weight_decay = 1e-5;
  c.epochs = 15;
  c.batch_size = 2;
  LiicModel m = NliFactory(32)();
  ASSERT_TRUE(Train(m, dev, c).completed);
  TuneModelThreshold(m, dev);
  EXPECT_EQ(EvaluateModel(m, dev).f1, 1.0);
}

TEST(TrainTest, Deterministic) {
  auto dev = ToyDev();
  dev.resize(20);
  HyperConfig c;
  c.lr = 1e-3;
  c.epochs = 2;
  c.seed = 5;
  LiicModel a = NliFactory()();
  LiicModel b = NliFactory()();
  const auto oa = Train(a, dev, c);
  const auto ob = Train(b, dev, c);
  EXPECT_EQ(oa.epoch_losses, ob.epoch_losses);
  EXPECT_EQ(a.classifier().Parameters(), b.classifier().Parameters());
}

TEST(TrainTest, AccumulationMatchesConcatenatedBatch) {
  auto dev = ToyDev();
  dev.resize(8);
  LiicModel m = PatternLiic(DefaultManualPatterns(), 8);
  const auto full = BatchGradient(m, dev);
  const auto a = BatchGradient(m, std::span(dev).first(4));
  const auto b = BatchGradient(m, std::span(dev).last(4));
  ASSERT_EQ(full.size(), a.size());
  for (std::size_t i = 0; i < full.size(); ++i) EXPECT_NEAR(full[i], a[i] + b[i], 1e-10);
}

TEST(TrainTest, PatternModelTrains) {
  auto dev = ToyDev();
  dev.resize(20);
  HyperConfig c;
  c.lr = 1e-2;
  c.epochs = 3;
  LiicModel m = PatternLiic(DefaultManualPatterns());
  const auto out = Train(m, dev, c);
  ASSERT_TRUE(out.completed);
  EXPECT_LT(out.epoch_losses.back(), out.epoch_losses.front());
}

TEST(TuneTest, ClampsIntoScoreRange) {
  const auto dev = ToyDev();
  LiicModel m = PatternLiic(DefaultManualPatterns());
  const double t = TuneModelThreshold(m, dev);
  EXPECT_GE(t, -1.0);
  EXPECT_LE(t, 1.0);
  EXPECT_EQ(m.threshold(), t);
}

std::vector<HyperConfig> SearchConfigs() {
  std::vector<HyperConfig> configs(3);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    configs[i].lr = 0.0;
    configs[i].epochs = 2;
    configs[i].seed = i;
  }
  configs[1].lr = 2e-2;
  return configs;
}

TEST(RunSearchTest, SelectsBestAndResumesFromLedger) {
  const auto dev = ToyDev();
  const std::vector<EntailmentInstance> train(dev.begin(), dev.begin() + 48);
  const std::vector<EntailmentInstance> dev2(dev.begin() + 48, dev.end());
  const fs::path dir = TempDir("search");
  SearchOptions options;
  options.ledger = dir / "runs.jsonl";
  options.checkpoint_dir = dir / "ckpt";
  options.threads = 2;
  const auto configs = SearchConfigs();
  const SearchResult r = RunSearch(NliFactory(), configs, train, dev2, options);
  ASSERT_EQ(r.records.size(), 3u);
  ASSERT_TRUE(r.best.has_value());
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    ASSERT_TRUE(r.records[i].completed);
    EXPECT_EQ(r.scores[i], r.records[i].dev2->auc_restricted);
    if (r.scores[i] > r.scores[argmax]) argmax = i;
  }
  EXPECT_EQ(*r.best, argmax);
  EXPECT_EQ(*r.best, 1u);
  EXPECT_NE(r.records[0].key, r.records[2].key);
  ASSERT_TRUE(r.best_model.has_value());
  EXPECT_EQ(EvaluateModel(*r.best_model, dev2).auc_restricted, r.scores[1]);

  std::ifstream before(*options.ledger);
  const auto lines = std::count(std::istreambuf_iterator<char>(before), {}, '\n');
  const SearchResult again = RunSearch(NliFactory(), configs, train, dev2, options);
  std::ifstream after(*options.ledger);
  EXPECT_EQ(std::count(std::istreambuf_iterator<char>(after), {}, '\n'), lines);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(again.records[i].wall_seconds, r.records[i].wall_seconds);
    EXPECT_EQ(again.scores[i], r.scores[i]);
  }
  ASSERT_TRUE(again.best_model.has_value());
  EXPECT_EQ(EvaluateModel(*again.best_model, dev2).auc_restricted, r.scores[1]);

  for (int n = 1; n <= 3; ++n) {
    EXPECT_NEAR(ExpectedValidationPerformance(r.scores, n), oracle::EvpByEnumeration(r.scores, n), 1e-12);
  }
  fs::remove_all(dir);
}

TEST(RunSearchTest, FailedRunsScoreZero) {
  const auto dev = ToyDev();
  std::vector<HyperConfig> configs(1);
  configs[0].lr = 0.0;
  ModelFactory broken = [] {
    HeadParams head = HeadParams::Zeros(16);
    head.b2 = {0.0, std::nan("")};
    return LiicModel(NliModel(SequenceClassifier(std::make_shared<MockBackend>(), head)));
  };
  const SearchResult r = RunSearch(broken, configs, dev, dev);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_FALSE(r.records[0].completed);
  EXPECT_FALSE(r.records[0].error.empty());
  EXPECT_EQ(r.scores[0], 0.0);
  EXPECT_FALSE(r.best.has_value());
}

TEST(RunRecordTest, JsonRoundTrip) {
  RunRecord rec;
  rec.key = "abc";
  rec.approach = "nli";
  rec.completed = true;
  rec.dev2 = RunMetrics{};
  rec.dev2->f1 = 0.5;
  rec.epoch_losses = {0.7, 0.6};
  const RunRecord back = RunRecord::FromJson(rec.ToJson());
  EXPECT_EQ(back.key, "abc");
  EXPECT_EQ(back.dev2->f1, 0.5);
  EXPECT_EQ(back.epoch_losses, rec.epoch_losses);
  nlohmann::json broken = rec.ToJson();
  broken["completed"] = false;
  EXPECT_THROW(RunRecord::FromJson(broken), std::exception);
}

TEST(TransferTest, StandardThresholdAndAudit) {
  const auto dev = ToyDev();
  LiicModel m = NliFactory()();
  m.set_threshold(0.9);
  DataSplit split{SplitName::kTest, dev};
  AuditedSplit target(split);
  const RunMetrics r = TransferEval(m, target);
  EXPECT_EQ(r.threshold, 0.5);
  EXPECT_TRUE(target.LabelsReadLast());
  EXPECT_EQ(target.Features(0).label, 0);
  EXPECT_FALSE(target.LabelsReadLast());

  std::vector<double> scores;
  std::vector<int> labels;
  for (const auto& inst : dev) {
    scores.push_back(m.Score(inst));
    labels.push_back(inst.label);
  }
  EXPECT_EQ(r.f1, Evaluate(scores, labels, 0.5, 0.5).f1);
}

TEST(TransferTest, RejectsPatternsMinedOnTarget) {
  PatternSet set = DefaultManualPatterns();
  set.mined_on = "levyholt";
  LiicModel m = PatternLiic(set);
  AuditedSplit target(DataSplit{SplitName::kTest, ToyDev()});
  EXPECT_THROW(TransferEval(m, target), ContractError);
  set.mined_on = "sherliic";
  m.set_pattern_set(set);
  EXPECT_EQ(TransferEval(m, target).threshold, 0.0);
}

std::vector<PatternRecord> RankedPool() {
  std::vector<PatternRecord> out;
  for (int i = 0; i < 3; ++i) {
    out.push_back({Pattern("{PARGL} {PREM} {PARGR} and so " + std::to_string(i) + " {HARGL} {HYPO} {HARGR}",
                           Polarity::kPattern, Origin::kAuto), 9 - i, 0});
  }
  out.push_back({Pattern("{PARGL} {PREM} {PARGR} but not {HARGL} {HYPO} {HARGR}", Polarity::kAntipattern,
                         Origin::kAuto), 5, 0});
  return out;
}

TEST(NSweepTest, GridShapeAndDiagonal) {
  const auto dev = ToyDev();
  const std::vector<EntailmentInstance> train(dev.begin(), dev.begin() + 24);
  const std::vector<EntailmentInstance> dev2(dev.begin() + 24, dev.begin() + 44);
  const std::vector<EntailmentInstance> test(dev.begin() + 44, dev.end());
  HyperConfig c;
  c.lr = 1e-2;
  c.epochs = 1;
  const std::vector<std::size_t> ns{1, 2, 4};
  const auto ranked = RankedPool();
  PatternModelFactory factory = [](PatternSet set) { return PatternLiic(std::move(set)); };
  const SweepResult r = NSweep(ranked, ns, ScoringMode::kPhiOnly, factory, c, train, dev2, test);
  ASSERT_EQ(r.cells.size(), 9u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const SweepCell& cell = r.cells[i * 3 + j];
      EXPECT_EQ(cell.train_n, ns[i]);
      EXPECT_EQ(cell.eval_n, ns[j]);
      EXPECT_EQ(cell.eval_patterns, std::min<std::size_t>(ns[j], 3));
    }
  }
  EXPECT_TRUE(r.cells[8].clamped);
  EXPECT_FALSE(r.warnings.empty());

  LiicModel diag = factory(SelectTopN(ranked, 2, ScoringMode::kPhiOnly).patterns);
  Train(diag, train, c);
  TuneModelThreshold(diag, dev2);
  const RunMetrics expected = EvaluateModel(diag, test);
  EXPECT_EQ(r.cells[4].metrics.f1, expected.f1);
  EXPECT_EQ(r.cells[4].metrics.auc_restricted, expected.auc_restricted);
  EXPECT_EQ(r.ToJson()["cells"].size(), 9u);
}

int RunCli(const std::string& args) {
  return std::system((std::string(LIIC_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
}

TEST(CliTest, IngestMineTrainEval) {
  const fs::path dir = TempDir("cli");
  const std::string d = dir.string();
  const std::string toy = kToy.string();
  ASSERT_EQ(RunCli("ingest --input " + toy + "/dev.jsonl --split-dev1 --seed 0 --train-out " + d +
                   "/train.jsonl --dev2-out " + d + "/dev2.jsonl"), 0);
  EXPECT_EQ(LoadDataset(dir / "train.jsonl", Source::kLevyHolt).size(), 51u);
  ASSERT_EQ(RunCli("mine --corpus " + toy + "/corpus.txt --pairs " + toy + "/pairs.jsonl --out " + d +
                   "/ranked.tsv"), 0);
  EXPECT_GT(LoadPatternRecords(dir / "ranked.tsv").size(), 5u);
  ASSERT_EQ(RunCli("train --approach autpat --patterns " + d + "/ranked.tsv --train " + d + "/train.jsonl --dev2 " +
                   d + "/dev2.jsonl --epochs 1 --lr 0.01 --out " + d + "/model.json"), 0);
  ASSERT_EQ(RunCli("eval --model " + d + "/model.json --split " + toy + "/test.jsonl --threshold model --metrics-out " +
                   d + "/metrics.json"), 0);
  EXPECT_TRUE(fs::exists(dir / "metrics.json"));
  EXPECT_EQ(RunCli("lemma-baseline --split " + toy + "/test.jsonl"), 0);
  EXPECT_NE(RunCli("eval --model " + d + "/missing.json --split " + toy + "/test.jsonl"), 0);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace liic
