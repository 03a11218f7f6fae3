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

// Experiment orchestration: the training loop, random hyperparameter search,
// transfer evaluation and pattern-count sweeps.

#ifndef LIIC_HARNESS_H_
#define LIIC_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "liic/datamodel.h"
#include "liic/evaluation.h"
#include "liic/lmbackend.h"
#include "liic/nli_approach.h"
#include "liic/pattern_approach.h"

namespace liic {

inline constexpr double kMinLr = 1e-8;
inline constexpr double kMaxLr = 5e-2;
inline constexpr double kMinWeightDecay = 1e-5;
inline constexpr double kMaxWeightDecay = 1e-1;
inline constexpr int kMaxGradAccum = 10;

// Batch-size profiles: "base" trains with 10 instances per batch, "large"
// with 2.
std::size_t ProfileBatchSize(std::string_view profile);

struct HyperConfig {
  double lr = 1e-3;
  double weight_decay = 1e-3;
  int grad_accum = 1;
  int epochs = 5;
  std::size_t batch_size = 10;
  std::uint64_t seed = 0;

  // Throws ConfigError on values outside the sampling ranges. lr = 0 is
  // accepted as a no-op run.
  void Validate() const;
  nlohmann::json ToJson() const;
  static HyperConfig FromJson(const nlohmann::json& j);

  friend bool operator==(const HyperConfig&, const HyperConfig&) = default;
};

// lr and weight decay log-uniform, grad_accum uniform over 1..10. Run seeds
// are derived from `seed` and the index, so the list is reproducible.
std::vector<HyperConfig> SampleConfigs(std::size_t count, std::uint64_t seed,
                                       std::string_view profile = "base");

// lr0 * (1 - step / total_steps), no warm-up.
double LrSchedule(std::int64_t step, std::int64_t total_steps, double lr0);

// Key-value config file: one `key = value` per line, `#` starts a comment.
// Keys: lr, weight_decay, grad_accum, epochs, batch_size, profile, seed.
std::map<std::string, std::string> ReadKeyValues(std::istream& in);
HyperConfig HyperConfigFromKeyValues(const std::map<std::string, std::string>& values,
                                     HyperConfig defaults = {});
HyperConfig LoadHyperConfig(const std::filesystem::path& path);

enum class Approach { kNli, kPattern };
std::string_view ApproachName(Approach a);
Approach ParseApproach(std::string_view name);

// Either an NLI classifier or a pattern model behind one scoring interface.
class LiicModel {
 public:
  explicit LiicModel(NliModel model) : impl_(std::move(model)) {}
  explicit LiicModel(PatternModel model) : impl_(std::move(model)) {}

  Approach approach() const;
  double Score(const EntailmentInstance& inst) const;
  std::vector<double> Scores(std::span<const EntailmentInstance> instances) const;
  int Decide(const EntailmentInstance& inst) const;

  double threshold() const;
  void set_threshold(double threshold);
  // Standard threshold of the approach: 0.5 for NLI, 0 for patterns.
  double standard_threshold() const;
  // Range of Score(); tuned thresholds are clamped into it.
  std::pair<double, double> score_range() const;

  const SequenceClassifier& classifier() const;
  SequenceClassifier& mutable_classifier();
  // nullptr for NLI models.
  const PatternSet* pattern_set() const;
  void set_pattern_set(PatternSet patterns);

  // Deep copy with its own backend.
  LiicModel Clone() const;

  // Training targets for one instance; for patterns one group per chunk.
  std::vector<std::vector<WeightedExample>> TrainingGroups(const EntailmentInstance& inst,
                                                           std::size_t chunk_size) const;

 private:
  std::variant<NliModel, PatternModel> impl_;
};

struct TrainOptions {
  std::size_t chunk_size = 5;
  bool dropout = true;
};

struct TrainOutcome {
  bool completed = false;
  std::string error;
  std::vector<double> epoch_losses;  // mean loss per instance
  std::int64_t optimizer_steps = 0;
  std::size_t clamped = 0;
};

// Trains in place for config.epochs epochs. Instances are shuffled per epoch
// with the run seed; gradients are summed over grad_accum mini-batches before
// each Adam step and the learning rate decays linearly to 0 over all steps.
// A non-finite loss stops the run and is reported, not thrown.
TrainOutcome Train(LiicModel& model, std::span<const EntailmentInstance> train, const HyperConfig& config,
                   const TrainOptions& options = {});

// Summed gradient of one mini-batch at the current parameters (no dropout).
std::vector<double> BatchGradient(const LiicModel& model, std::span<const EntailmentInstance> batch,
                                  std::size_t chunk_size = 5);

// Tunes the threshold for F1 on `dev` and stores it (clamped to the score
// range). Returns the chosen threshold.
double TuneModelThreshold(LiicModel& model, std::span<const EntailmentInstance> dev);

// Metrics at the model's current threshold.
RunMetrics EvaluateModel(const LiicModel& model, std::span<const EntailmentInstance> split);

std::string DataHash(std::span<const EntailmentInstance> instances);

struct RunRecord {
  std::string key;  // content address of config, approach, patterns and data
  HyperConfig config;
  std::string approach;
  std::string pattern_set_hash;
  bool completed = false;
  std::string error;
  std::optional<RunMetrics> dev2;  // present iff completed
  std::vector<double> epoch_losses;
  std::string checkpoint;
  double wall_seconds = 0.0;

  nlohmann::json ToJson() const;
  static RunRecord FromJson(const nlohmann::json& j);
};

struct SearchOptions {
  // Append-only JSONL ledger; runs already recorded there are not retrained.
  std::optional<std::filesystem::path> ledger;
  // Directory for per-run checkpoints.
  std::optional<std::filesystem::path> checkpoint_dir;
  std::size_t threads = 1;
  TrainOptions train;
};

struct SearchResult {
  std::vector<RunRecord> records;  // in config order
  std::optional<std::size_t> best;  // max dev2 AUC among completed runs
  std::optional<LiicModel> best_model;
  // One dev2 AUC per config, 0 for failed runs.
  std::vector<double> scores;
};

using ModelFactory = std::function<LiicModel()>;

// Trains one fresh model per config, tunes its threshold and evaluates it on
// dev2. Ties on AUC keep the earlier config.
SearchResult RunSearch(const ModelFactory& factory, std::span<const HyperConfig> configs,
                       std::span<const EntailmentInstance> train, std::span<const EntailmentInstance> dev2,
                       const SearchOptions& options = {});

// Read access to an evaluation split that logs every feature and label read.
class AuditedSplit {
 public:
  enum class Access { kFeatures, kLabels };

  explicit AuditedSplit(DataSplit split);

  std::size_t size() const { return split_.instances.size(); }
  std::optional<Source> source() const;
  // The instance with its label hidden (set to 0).
  EntailmentInstance Features(std::size_t i) const;
  std::vector<int> Labels() const;

  const std::vector<Access>& log() const { return log_; }
  // True iff no label was read before the last feature read.
  bool LabelsReadLast() const;

 private:
  DataSplit split_;
  mutable std::vector<Access> log_;
};

// Scores the target split at the standard threshold of the approach, with no
// tuning on the target. Throws ContractError for a pattern set mined on the
// target dataset. The model's own threshold is left untouched.
RunMetrics TransferEval(const LiicModel& model, const AuditedSplit& target);

struct SweepCell {
  std::size_t train_n = 0;
  std::size_t eval_n = 0;
  std::size_t train_patterns = 0;  // after clamping to the pool
  std::size_t eval_patterns = 0;
  bool clamped = false;
  RunMetrics metrics;
};

struct SweepResult {
  std::vector<std::size_t> n_values;
  std::vector<SweepCell> cells;  // row-major: train_n outer, eval_n inner
  std::vector<std::string> warnings;

  nlohmann::json ToJson() const;
};

using PatternModelFactory = std::function<LiicModel(PatternSet)>;

// For every train_n: trains on the top-train_n patterns, then for every eval_n
// swaps in the top-eval_n patterns, tunes the threshold on dev2 and evaluates
// on `test`. Pools shorter than n are clamped with a warning.
SweepResult NSweep(std::span<const PatternRecord> ranked, std::span<const std::size_t> n_values,
                   ScoringMode mode, const PatternModelFactory& factory, const HyperConfig& config,
                   std::span<const EntailmentInstance> train, std::span<const EntailmentInstance> dev2,
                   std::span<const EntailmentInstance> test, const TrainOptions& options = {});

}  // namespace liic

#endif  // LIIC_HARNESS_H_
