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

// Command-line front end: ingest, mine, train, eval, hpo, sweep-n, transfer,
// evp and lemma-baseline.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "liic/checkpoint.h"
#include "liic/datamodel.h"
#include "liic/errors.h"
#include "liic/evaluation.h"
#include "liic/harness.h"
#include "liic/mining.h"
#include "liic/mock_backend.h"
#include "liic/pattern_approach.h"

namespace {

using liic::DataSplit;
using nlohmann::json;

struct BackendFlags {
  std::size_t dim = 16;
  std::uint64_t seed = 0;
  std::uint64_t init_seed = 0;
};

void AddBackendFlags(CLI::App* cmd, BackendFlags& flags) {
  cmd->add_option("--mock-dim", flags.dim, "Mock backend dimension")->capture_default_str();
  cmd->add_option("--mock-seed", flags.seed, "Mock backend hash seed")->capture_default_str();
  cmd->add_option("--init-seed", flags.init_seed, "Classifier head initialization seed")->capture_default_str();
}

liic::Source PeekSource(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw liic::ConfigError("cannot open dataset '" + path + "'");
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    return liic::ParseInstance(line, n).source;
  }
  throw liic::ConfigError("dataset '" + path + "' is empty");
}

DataSplit Load(const std::string& path, std::optional<std::string> source = std::nullopt,
               liic::SplitName name = liic::SplitName::kDev1) {
  const liic::Source s = source ? liic::ParseSource(*source) : PeekSource(path);
  return liic::LoadDataset(path, s, name);
}

// Completion vocabulary for the mock: every pair representative.
std::vector<std::string> Representatives(const DataSplit& pairs) {
  std::vector<std::string> vocab;
  for (const auto& inst : pairs.instances) {
    for (const auto& r : {inst.prem.Representative(inst.source), inst.hypo.Representative(inst.source)}) {
      if (std::find(vocab.begin(), vocab.end(), r) == vocab.end()) vocab.push_back(r);
    }
  }
  return vocab;
}

liic::ModelFactory MakeFactory(const BackendFlags& flags, std::optional<liic::PatternSet> patterns) {
  liic::MockBackend::Options options;
  options.dim = flags.dim;
  options.seed = flags.seed;
  std::shared_ptr<liic::LmBackend> prototype = liic::MakeBackend(options);
  return [prototype, flags, patterns]() {
    liic::SequenceClassifier classifier(std::shared_ptr<liic::LmBackend>(prototype->Clone()),
                                        liic::HeadParams::Initialize(prototype->dim(), flags.init_seed));
    if (patterns) return liic::LiicModel(liic::PatternModel(std::move(classifier), *patterns));
    return liic::LiicModel(liic::NliModel(std::move(classifier)));
  };
}

struct ApproachFlags {
  std::string approach = "nli";
  bool use_antipatterns = true;
  std::string patterns;
  std::size_t top_n = 5;
  std::string mined_on;
};

void AddApproachFlags(CLI::App* cmd, ApproachFlags& flags) {
  cmd->add_option("--approach", flags.approach, "nli, manpat or autpat")
      ->check(CLI::IsMember({"nli", "manpat", "autpat"}))
      ->capture_default_str();
  cmd->add_option("--use-antipatterns", flags.use_antipatterns, "Score with antipatterns (phi_psi)")
      ->capture_default_str();
  cmd->add_option("--patterns", flags.patterns, "Pattern file (manpat: optional; autpat: ranked file)");
  cmd->add_option("--top-n", flags.top_n, "Patterns taken from a ranked file (autpat)")->capture_default_str();
  cmd->add_option("--mined-on", flags.mined_on, "Dataset the ranked patterns were mined on");
}

std::optional<liic::PatternSet> ResolvePatterns(const ApproachFlags& flags, const DataSplit& train) {
  const auto mode = flags.use_antipatterns ? liic::ScoringMode::kPhiPsi : liic::ScoringMode::kPhiOnly;
  if (flags.approach == "nli") return std::nullopt;
  liic::PatternSet set;
  if (flags.approach == "manpat") {
    set = flags.patterns.empty() ? liic::DefaultManualPatterns(mode) : liic::LoadPatternFile(flags.patterns, mode);
  } else {
    if (flags.patterns.empty()) throw liic::ConfigError("autpat needs --patterns with a ranked pattern file");
    const auto records = liic::LoadPatternRecords(flags.patterns);
    const auto selection = liic::SelectTopN(records, flags.top_n, mode);
    if (selection.short_pool) std::cerr << "warning: fewer than " << flags.top_n << " patterns available\n";
    set = selection.patterns;
    set.mined_on = flags.mined_on.empty() && !train.instances.empty()
                       ? std::string(liic::SourceName(train.instances.front().source))
                       : flags.mined_on;
  }
  if (mode == liic::ScoringMode::kPhiOnly) set.antipatterns.clear();
  set.Validate();
  return set;
}

void WriteJson(const std::string& path, const json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw liic::ConfigError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::vector<std::size_t> ParseSizeList(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw liic::ConfigError("bad list entry '" + item + "'");
    }
  }
  if (out.empty()) throw liic::ConfigError("empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexical inference in context toolkit"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Validate and normalize a dataset; optionally split dev1");
  std::string ingest_in, ingest_out, ingest_source, train_out, dev2_out;
  bool split_dev1 = false;
  std::uint64_t split_seed = 0;
  ingest->add_option("--input", ingest_in, "JSONL dataset")->required();
  ingest->add_option("--source", ingest_source, "levyholt or sherliic (default: from the first record)");
  ingest->add_option("--out", ingest_out, "Normalized output");
  ingest->add_flag("--split-dev1", split_dev1, "Split into train and dev2");
  ingest->add_option("--seed", split_seed, "Split seed")->capture_default_str();
  ingest->add_option("--train-out", train_out, "Train portion output");
  ingest->add_option("--dev2-out", dev2_out, "Dev2 portion output");

  // mine
  auto* mine = app.add_subcommand("mine", "Extract and rank patterns from a corpus");
  std::string corpus_path, pairs_path, mine_mode = "verbatim", ranked_out;
  std::size_t k = 100, threads = 1;
  BackendFlags mine_backend;
  mine->add_option("--corpus", corpus_path, "Corpus file (doc<TAB>index<TAB>sentence or one sentence per line)")
      ->required();
  mine->add_option("--pairs", pairs_path, "Entailment pairs (JSONL)")->required();
  mine->add_option("--mode", mine_mode, "verbatim or lemma")->capture_default_str();
  mine->add_option("--k", k, "Top-k completions")->capture_default_str();
  mine->add_option("--out", ranked_out, "Ranked pattern file")->required();
  mine->add_option("--threads", threads, "Worker threads")->capture_default_str();
  AddBackendFlags(mine, mine_backend);

  // train
  auto* train = app.add_subcommand("train", "Train one model");
  std::string train_path, dev2_path, model_out, config_path;
  ApproachFlags train_approach;
  BackendFlags train_backend;
  liic::HyperConfig cli_config;
  train->add_option("--train", train_path, "Training split")->required();
  train->add_option("--dev2", dev2_path, "Dev2 split for threshold tuning");
  train->add_option("--out", model_out, "Model checkpoint")->required();
  train->add_option("--config", config_path, "Key-value config file");
  train->add_option("--lr", cli_config.lr)->capture_default_str();
  train->add_option("--wd", cli_config.weight_decay)->capture_default_str();
  train->add_option("--accum", cli_config.grad_accum)->capture_default_str();
  train->add_option("--epochs", cli_config.epochs)->capture_default_str();
  train->add_option("--batch-size", cli_config.batch_size)->capture_default_str();
  train->add_option("--seed", cli_config.seed)->capture_default_str();
  AddApproachFlags(train, train_approach);
  AddBackendFlags(train, train_backend);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a model");
  std::string eval_model, eval_split, eval_threshold = "model", eval_dev2, metrics_out, pr_csv;
  eval->add_option("--model", eval_model)->required();
  eval->add_option("--split", eval_split)->required();
  eval->add_option("--threshold", eval_threshold, "auto (tune on --dev2), model, or a number")
      ->capture_default_str();
  eval->add_option("--dev2", eval_dev2, "Dev2 split for --threshold auto");
  eval->add_option("--metrics-out", metrics_out, "Metrics JSON (default stdout)");
  eval->add_option("--pr-csv", pr_csv, "PR curve CSV");

  // hpo
  auto* hpo = app.add_subcommand("hpo", "Random hyperparameter search");
  std::size_t num_samples = 500, hpo_threads = 1;
  std::uint64_t hpo_seed = 0;
  std::string hpo_train, hpo_dev2, hpo_ledger, hpo_out, hpo_ckpt_dir, profile = "base", hpo_summary;
  ApproachFlags hpo_approach;
  BackendFlags hpo_backend;
  hpo->add_option("--num-samples", num_samples)->capture_default_str();
  hpo->add_option("--seed", hpo_seed)->capture_default_str();
  hpo->add_option("--profile", profile, "base or large")->capture_default_str();
  hpo->add_option("--train", hpo_train)->required();
  hpo->add_option("--dev2", hpo_dev2)->required();
  hpo->add_option("--ledger", hpo_ledger, "Append-only run ledger (JSONL)");
  hpo->add_option("--checkpoint-dir", hpo_ckpt_dir, "Per-run checkpoints");
  hpo->add_option("--out", hpo_out, "Best model checkpoint")->required();
  hpo->add_option("--summary", hpo_summary, "Search summary JSON");
  hpo->add_option("--threads", hpo_threads)->capture_default_str();
  AddApproachFlags(hpo, hpo_approach);
  AddBackendFlags(hpo, hpo_backend);

  // sweep-n
  auto* sweep = app.add_subcommand("sweep-n", "Train/eval pattern-count grid");
  std::string sweep_values = "5,15,25,50", sweep_ranked, sweep_train, sweep_dev2, sweep_test, sweep_config,
              sweep_out;
  bool sweep_antipatterns = true;
  BackendFlags sweep_backend;
  sweep->add_option("--values", sweep_values)->capture_default_str();
  sweep->add_option("--ranked", sweep_ranked, "Ranked pattern file")->required();
  sweep->add_option("--use-antipatterns", sweep_antipatterns)->capture_default_str();
  sweep->add_option("--train", sweep_train)->required();
  sweep->add_option("--dev2", sweep_dev2)->required();
  sweep->add_option("--test", sweep_test)->required();
  sweep->add_option("--config", sweep_config, "Key-value config file");
  sweep->add_option("--out", sweep_out, "Grid JSON (default stdout)");
  AddBackendFlags(sweep, sweep_backend);

  // transfer
  auto* transfer = app.add_subcommand("transfer", "Evaluate on another benchmark with standard thresholds");
  std::string transfer_model, transfer_target, transfer_out;
  transfer->add_option("--model", transfer_model)->required();
  transfer->add_option("--target", transfer_target)->required();
  transfer->add_option("--out", transfer_out, "Metrics JSON (default stdout)");

  // evp
  auto* evp = app.add_subcommand("evp", "Expected validation performance from a run ledger");
  std::string evp_runs;
  std::size_t evp_max_n = 0;
  evp->add_option("--runs", evp_runs, "Run ledger (JSONL)")->required();
  evp->add_option("--max-n", evp_max_n, "Largest n (default: number of runs)");

  // lemma-baseline
  auto* lemma = app.add_subcommand("lemma-baseline", "Predict entailment iff head lemmas agree");
  std::string lemma_split;
  lemma->add_option("--split", lemma_split)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      DataSplit split = Load(ingest_in, ingest_source.empty() ? std::nullopt : std::optional(ingest_source));
      if (!ingest_out.empty()) liic::SaveDataset(ingest_out, split);
      json summary = {{"instances", split.instances.size()}};
      if (split_dev1) {
        if (train_out.empty() || dev2_out.empty()) throw liic::ConfigError("--split-dev1 needs --train-out and --dev2-out");
        auto [tr, d2] = liic::SplitDev1(split, split_seed);
        liic::SaveDataset(train_out, tr);
        liic::SaveDataset(dev2_out, d2);
        summary["train"] = tr.instances.size();
        summary["dev2"] = d2.instances.size();
      }
      std::cout << summary.dump() << '\n';
    } else if (*mine) {
      const auto corpus = liic::LoadCorpus(corpus_path);
      const DataSplit pairs = Load(pairs_path);
      liic::RuleBasedInflector inflector;
      liic::MiningOptions options;
      options.mode = liic::ParseMatchMode(mine_mode);
      options.inflector = &inflector;
      options.threads = threads;
      const auto mined = liic::FindCandidates(corpus, pairs.instances, options);
      liic::MockBackend::Options mock;
      mock.dim = mine_backend.dim;
      mock.seed = mine_backend.seed;
      mock.completion_vocabulary = Representatives(pairs);
      const auto backend = liic::MakeBackend(mock);
      const auto ranked =
          liic::RankCandidates(*backend, mined.candidates, liic::ScoringPairs(pairs.instances), k, threads);
      liic::SaveRanked(ranked_out, ranked);
      std::cout << json{{"sentences", mined.stats.sentences},
                        {"candidates", mined.stats.candidates},
                        {"ranked", ranked.size()},
                        {"skipped_overlap", mined.stats.skipped_overlap},
                        {"skipped_length", mined.stats.skipped_length},
                        {"skipped_slot_literal", mined.stats.skipped_slot_literal}}
                       .dump()
                << '\n';
    } else if (*train) {
      const DataSplit tr = Load(train_path);
      liic::HyperConfig config = cli_config;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw liic::ConfigError("cannot open config '" + config_path + "'");
        config = liic::HyperConfigFromKeyValues(liic::ReadKeyValues(in), cli_config);
      }
      liic::LiicModel model = MakeFactory(train_backend, ResolvePatterns(train_approach, tr))();
      const auto outcome = liic::Train(model, tr.instances, config);
      if (!outcome.completed) throw liic::NumericError("training failed: " + outcome.error);
      json summary = {{"epoch_losses", outcome.epoch_losses}, {"optimizer_steps", outcome.optimizer_steps}};
      if (!dev2_path.empty()) {
        summary["threshold"] = liic::TuneModelThreshold(model, Load(dev2_path).instances);
      }
      liic::SaveCheckpoint(model_out, model, {{"config", config.ToJson()}});
      std::cout << summary.dump() << '\n';
    } else if (*eval) {
      liic::LiicModel model = liic::LoadCheckpoint(eval_model).model;
      if (eval_threshold == "auto") {
        if (eval_dev2.empty()) throw liic::ConfigError("--threshold auto needs --dev2");
        liic::TuneModelThreshold(model, Load(eval_dev2).instances);
      } else if (eval_threshold != "model") {
        try {
          model.set_threshold(std::stod(eval_threshold));
        } catch (const std::invalid_argument&) {
          throw liic::ConfigError("--threshold must be auto, model or a number");
        }
      }
      const DataSplit split = Load(eval_split);
      const liic::RunMetrics metrics = liic::EvaluateModel(model, split.instances);
      if (!pr_csv.empty()) {
        std::vector<int> labels;
        for (const auto& inst : split.instances) labels.push_back(inst.label);
        liic::WritePrCurveCsv(pr_csv, liic::ComputePrCurve(model.Scores(split.instances), labels));
      }
      WriteJson(metrics_out, liic::MetricsToJson(metrics));
    } else if (*hpo) {
      const DataSplit tr = Load(hpo_train);
      const DataSplit d2 = Load(hpo_dev2);
      const auto configs = liic::SampleConfigs(num_samples, hpo_seed, profile);
      liic::SearchOptions options;
      if (!hpo_ledger.empty()) options.ledger = hpo_ledger;
      if (!hpo_ckpt_dir.empty()) options.checkpoint_dir = hpo_ckpt_dir;
      options.threads = hpo_threads;
      const auto result = liic::RunSearch(MakeFactory(hpo_backend, ResolvePatterns(hpo_approach, tr)), configs,
                                          tr.instances, d2.instances, options);
      if (!result.best) throw liic::NumericError("no configuration completed");
      const auto& best = result.records[*result.best];
      liic::SaveCheckpoint(hpo_out, *result.best_model, {{"config", best.config.ToJson()}, {"run_key", best.key}});
      json runs = json::array();
      for (const auto& r : result.records) runs.push_back(r.ToJson());
      const json summary = {{"best", *result.best}, {"best_dev2", liic::MetricsToJson(*best.dev2)},
                            {"scores", result.scores}, {"runs", runs}};
      if (!hpo_summary.empty()) WriteJson(hpo_summary, summary);
      std::cout << json{{"best", *result.best}, {"dev2_auc", best.dev2->auc_restricted},
                        {"threshold", result.best_model->threshold()}}
                       .dump()
                << '\n';
    } else if (*sweep) {
      const DataSplit tr = Load(sweep_train);
      const auto records = liic::LoadPatternRecords(sweep_ranked);
      const auto mode = sweep_antipatterns ? liic::ScoringMode::kPhiPsi : liic::ScoringMode::kPhiOnly;
      liic::HyperConfig config;
      if (!sweep_config.empty()) config = liic::LoadHyperConfig(sweep_config);
      const auto factory = [&](liic::PatternSet set) {
        return MakeFactory(sweep_backend, std::move(set))();
      };
      const auto values = ParseSizeList(sweep_values);
      const auto grid = liic::NSweep(records, values, mode, factory, config, tr.instances,
                                     Load(sweep_dev2).instances, Load(sweep_test).instances);
      for (const auto& w : grid.warnings) std::cerr << "warning: " << w << '\n';
      WriteJson(sweep_out, grid.ToJson());
    } else if (*transfer) {
      const liic::LiicModel model = liic::LoadCheckpoint(transfer_model).model;
      const liic::AuditedSplit target(Load(transfer_target, std::nullopt, liic::SplitName::kTest));
      WriteJson(transfer_out, liic::MetricsToJson(liic::TransferEval(model, target)));
    } else if (*evp) {
      std::ifstream in(evp_runs);
      if (!in) throw liic::ConfigError("cannot open '" + evp_runs + "'");
      std::vector<double> scores;
      std::string line;
      while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto r = liic::RunRecord::FromJson(json::parse(line));
        scores.push_back(r.completed ? r.dev2->auc_restricted : 0.0);
      }
      if (scores.empty()) throw liic::ConfigError("no runs in '" + evp_runs + "'");
      const std::size_t max_n = evp_max_n == 0 ? scores.size() : evp_max_n;
      std::cout << "n\tevp\n" << std::setprecision(6) << std::fixed;
      for (std::size_t n = 1; n <= max_n; ++n) {
        std::cout << n << '\t' << liic::ExpectedValidationPerformance(scores, n) << '\n';
      }
    } else if (*lemma) {
      const DataSplit split = Load(lemma_split);
      std::vector<int> predictions, labels;
      std::size_t fallbacks = 0;
      for (const auto& inst : split.instances) {
        const auto d = liic::LemmaBaseline(inst);
        predictions.push_back(d.prediction);
        labels.push_back(inst.label);
        fallbacks += d.fallback ? 1 : 0;
      }
      const auto prf = liic::Prf1(predictions, labels);
      std::cout << json{{"precision", prf.precision}, {"recall", prf.recall}, {"f1", prf.f1},
                        {"fallbacks", fallbacks}}
                       .dump()
                << '\n';
    }
  } catch (const liic::ParseError& e) {
    std::cerr << "error: line " << e.line() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
