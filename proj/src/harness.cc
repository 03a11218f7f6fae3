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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "liic/checkpoint.h"
#include "liic/errors.h"
#include "liic/mining.h"
#include "liic/random.h"

namespace liic {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double LogUniform(Rng& rng, double lo, double hi) {
  return std::pow(10.0, rng.Uniform(std::log10(lo), std::log10(hi)));
}

std::string Hex64(std::uint64_t h) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (!in || !(in >> std::ws).eof()) throw ConfigError("bad value '" + text + "' for key '" + key + "'");
  return value;
}

bool AllFinite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

std::size_t ProfileBatchSize(std::string_view profile) {
  if (profile == "base") return 10;
  if (profile == "large") return 2;
  throw ConfigError("unknown batch profile '" + std::string(profile) + "'");
}

void HyperConfig::Validate() const {
  if (!(lr == 0.0 || (lr >= kMinLr && lr <= kMaxLr))) throw ConfigError("lr outside [1e-8, 5e-2]");
  if (!(weight_decay >= kMinWeightDecay && weight_decay <= kMaxWeightDecay)) {
    throw ConfigError("weight decay outside [1e-5, 1e-1]");
  }
  if (grad_accum < 1 || grad_accum > kMaxGradAccum) throw ConfigError("grad_accum outside 1..10");
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (batch_size < 1) throw ConfigError("batch size must be at least 1");
}

nlohmann::json HyperConfig::ToJson() const {
  return {{"lr", lr},         {"weight_decay", weight_decay}, {"grad_accum", grad_accum},
          {"epochs", epochs}, {"batch_size", batch_size},     {"seed", seed}};
}

HyperConfig HyperConfig::FromJson(const nlohmann::json& j) {
  HyperConfig c;
  c.lr = j.at("lr").get<double>();
  c.weight_decay = j.at("weight_decay").get<double>();
  c.grad_accum = j.at("grad_accum").get<int>();
  c.epochs = j.value("epochs", 5);
  c.batch_size = j.value("batch_size", std::size_t{10});
  c.seed = j.value("seed", std::uint64_t{0});
  return c;
}

std::vector<HyperConfig> SampleConfigs(std::size_t count, std::uint64_t seed, std::string_view profile) {
  if (count < 1) throw ContractError("need at least one config");
  const std::size_t batch = ProfileBatchSize(profile);
  Rng rng(seed);
  std::vector<HyperConfig> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    HyperConfig c;
    c.lr = LogUniform(rng, kMinLr, kMaxLr);
    c.weight_decay = LogUniform(rng, kMinWeightDecay, kMaxWeightDecay);
    c.grad_accum = 1 + static_cast<int>(rng.Below(kMaxGradAccum));
    c.batch_size = batch;
    c.seed = SplitMix64(seed + (i + 1) * kGoldenGamma);
    out.push_back(c);
  }
  return out;
}

double LrSchedule(std::int64_t step, std::int64_t total_steps, double lr0) {
  if (total_steps < 1 || step < 0 || step > total_steps) throw ContractError("step outside [0, total_steps]");
  if (step == total_steps) return 0.0;
  return lr0 * (1.0 - static_cast<double>(step) / static_cast<double>(total_steps));
}

std::map<std::string, std::string> ReadKeyValues(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (Trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_number);
    const std::string key = Trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line_number);
    out[key] = Trim(std::string_view(line).substr(eq + 1));
  }
  return out;
}

HyperConfig HyperConfigFromKeyValues(const std::map<std::string, std::string>& values, HyperConfig c) {
  for (const auto& [key, value] : values) {
    if (key == "lr") c.lr = ParseNumber<double>(key, value);
    else if (key == "weight_decay") c.weight_decay = ParseNumber<double>(key, value);
    else if (key == "grad_accum") c.grad_accum = ParseNumber<int>(key, value);
    else if (key == "epochs") c.epochs = ParseNumber<int>(key, value);
    else if (key == "batch_size") c.batch_size = ParseNumber<std::size_t>(key, value);
    else if (key == "profile") c.batch_size = ProfileBatchSize(value);
    else if (key == "seed") c.seed = ParseNumber<std::uint64_t>(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  c.Validate();
  return c;
}

HyperConfig LoadHyperConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  return HyperConfigFromKeyValues(ReadKeyValues(in));
}

std::string_view ApproachName(Approach a) { return a == Approach::kNli ? "nli" : "pattern"; }

Approach ParseApproach(std::string_view name) {
  if (name == "nli") return Approach::kNli;
  if (name == "pattern") return Approach::kPattern;
  throw ConfigError("unknown approach '" + std::string(name) + "'");
}

Approach LiicModel::approach() const {
  return std::holds_alternative<NliModel>(impl_) ? Approach::kNli : Approach::kPattern;
}

double LiicModel::Score(const EntailmentInstance& inst) const {
  return std::visit([&](const auto& m) { return m.Score(inst); }, impl_);
}

std::vector<double> LiicModel::Scores(std::span<const EntailmentInstance> instances) const {
  std::vector<double> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) out.push_back(Score(inst));
  return out;
}

int LiicModel::Decide(const EntailmentInstance& inst) const {
  return std::visit([&](const auto& m) { return m.Decide(inst); }, impl_);
}

double LiicModel::threshold() const {
  return std::visit([](const auto& m) { return m.threshold(); }, impl_);
}

void LiicModel::set_threshold(double threshold) {
  std::visit([&](auto& m) { m.set_threshold(threshold); }, impl_);
}

double LiicModel::standard_threshold() const {
  return approach() == Approach::kNli ? kStandardNliThreshold : kStandardPatternThreshold;
}

std::pair<double, double> LiicModel::score_range() const {
  return approach() == Approach::kNli ? std::pair{0.0, 1.0} : std::pair{-1.0, 1.0};
}

const SequenceClassifier& LiicModel::classifier() const {
  return std::visit([](const auto& m) -> const SequenceClassifier& { return m.classifier(); }, impl_);
}

SequenceClassifier& LiicModel::mutable_classifier() {
  return std::visit([](auto& m) -> SequenceClassifier& { return m.mutable_classifier(); }, impl_);
}

const PatternSet* LiicModel::pattern_set() const {
  const auto* p = std::get_if<PatternModel>(&impl_);
  return p == nullptr ? nullptr : &p->pattern_set();
}

void LiicModel::set_pattern_set(PatternSet patterns) {
  auto* p = std::get_if<PatternModel>(&impl_);
  if (p == nullptr) throw ContractError("an NLI model has no pattern set");
  p->set_pattern_set(std::move(patterns));
}

LiicModel LiicModel::Clone() const {
  if (const auto* nli = std::get_if<NliModel>(&impl_)) {
    return LiicModel(NliModel(nli->classifier().Clone(), nli->threshold()));
  }
  const auto& pat = std::get<PatternModel>(impl_);
  return LiicModel(PatternModel(pat.classifier().Clone(), pat.pattern_set(), pat.threshold()));
}

std::vector<std::vector<WeightedExample>> LiicModel::TrainingGroups(const EntailmentInstance& inst,
                                                                    std::size_t chunk_size) const {
  if (approach() == Approach::kNli) return {{NliModel::ToWeighted(NliModel::ToExample(inst))}};
  std::vector<std::vector<WeightedExample>> groups;
  for (const auto& chunk : ChunkedTrainingView(*pattern_set(), chunk_size)) {
    groups.push_back(PatternTrainingExamples(chunk, inst, inst.label));
  }
  return groups;
}

namespace {

std::vector<WeightedExample> BatchExamples(const LiicModel& model, std::span<const EntailmentInstance> train,
                                           std::span<const std::size_t> indices, std::size_t chunk_size) {
  std::vector<WeightedExample> out;
  for (std::size_t i : indices) {
    for (auto& group : model.TrainingGroups(train[i], chunk_size)) {
      out.insert(out.end(), std::make_move_iterator(group.begin()), std::make_move_iterator(group.end()));
    }
  }
  return out;
}

}  // namespace

TrainOutcome Train(LiicModel& model, std::span<const EntailmentInstance> train, const HyperConfig& config,
                   const TrainOptions& options) {
  config.Validate();
  if (train.empty()) throw ContractError("empty training split");
  for (const auto& inst : train) {
    if (inst.label != 0 && inst.label != 1) throw ContractError("training labels must be 0 or 1");
  }
  if (const PatternSet* set = model.pattern_set()) set->Validate();

  SequenceClassifier& classifier = model.mutable_classifier();
  {
    std::vector<std::size_t> all(train.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<TextInput> inputs;
    for (const auto& ex : BatchExamples(model, train, all, options.chunk_size)) inputs.push_back(ex.input);
    classifier.mutable_backend().PrepareTraining(inputs);
  }

  const std::size_t n = train.size();
  const std::size_t batches = (n + config.batch_size - 1) / config.batch_size;
  const auto accum = static_cast<std::size_t>(config.grad_accum);
  const std::int64_t steps_per_epoch = static_cast<std::int64_t>((batches + accum - 1) / accum);
  const std::int64_t total_steps = steps_per_epoch * config.epochs;

  Rng shuffle_rng(config.seed);
  Rng dropout_rng(SplitMix64(config.seed ^ 0x64726f706f7574ULL));
  Rng* dropout = options.dropout ? &dropout_rng : nullptr;

  AdamState state;
  std::vector<double> grad(classifier.num_parameters(), 0.0);
  TrainOutcome outcome;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_rng.Shuffle(std::span<std::size_t>(order));
    double epoch_loss = 0.0;
    std::size_t pending = 0;
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
      const std::size_t begin = b * config.batch_size;
      const std::size_t end = std::min(n, begin + config.batch_size);
      const auto examples =
          BatchExamples(model, train, std::span<const std::size_t>(order).subspan(begin, end - begin),
                        options.chunk_size);
      LossResult loss;
      try {
        loss = classifier.AccumulateGradient(examples, grad, dropout);
      } catch (const NumericError& e) {
        outcome.error = e.what();
        return outcome;
      }
      if (!std::isfinite(loss.loss) || !AllFinite(grad)) {
        outcome.error = "non-finite loss in epoch " + std::to_string(epoch + 1);
        return outcome;
      }
      epoch_loss += loss.loss;
      outcome.clamped += loss.clamped;
      if (++pending == accum || b + 1 == batches) {
        const double lr = LrSchedule(outcome.optimizer_steps, total_steps, config.lr);
        ApplyGradient(classifier, grad, state, lr, config.weight_decay);
        ++outcome.optimizer_steps;
        pending = 0;
        std::fill(grad.begin(), grad.end(), 0.0);
      }
    }
    outcome.epoch_losses.push_back(epoch_loss / static_cast<double>(n));
  }
  if (!AllFinite(classifier.Parameters())) {
    outcome.error = "non-finite parameters after training";
    return outcome;
  }
  outcome.completed = true;
  return outcome;
}

std::vector<double> BatchGradient(const LiicModel& model, std::span<const EntailmentInstance> batch,
                                  std::size_t chunk_size) {
  std::vector<std::size_t> all(batch.size());
  std::iota(all.begin(), all.end(), 0);
  const auto examples = BatchExamples(model, batch, all, chunk_size);
  std::vector<double> grad(model.classifier().num_parameters(), 0.0);
  model.classifier().AccumulateGradient(examples, grad, nullptr);
  return grad;
}

namespace {

std::vector<int> LabelsOf(std::span<const EntailmentInstance> split) {
  std::vector<int> labels;
  labels.reserve(split.size());
  for (const auto& inst : split) labels.push_back(inst.label);
  return labels;
}

}  // namespace

double TuneModelThreshold(LiicModel& model, std::span<const EntailmentInstance> dev) {
  const auto scores = model.Scores(dev);
  const auto labels = LabelsOf(dev);
  const auto [lo, hi] = model.score_range();
  const double threshold = std::clamp(TuneThreshold(scores, labels).threshold, lo, hi);
  model.set_threshold(threshold);
  return threshold;
}

RunMetrics EvaluateModel(const LiicModel& model, std::span<const EntailmentInstance> split) {
  const auto scores = model.Scores(split);
  return Evaluate(scores, LabelsOf(split), model.threshold());
}

std::string DataHash(std::span<const EntailmentInstance> instances) {
  std::uint64_t h = 0;
  for (const auto& inst : instances) h = SplitMix64(h ^ Fnv1a64(SerializeInstance(inst)));
  return Hex64(h);
}

nlohmann::json RunRecord::ToJson() const {
  nlohmann::json j = {{"key", key},
                      {"config", config.ToJson()},
                      {"approach", approach},
                      {"pattern_set_hash", pattern_set_hash},
                      {"completed", completed},
                      {"error", error},
                      {"epoch_losses", epoch_losses},
                      {"checkpoint", checkpoint},
                      {"wall_seconds", wall_seconds}};
  if (dev2) j["dev2"] = MetricsToJson(*dev2);
  return j;
}

RunRecord RunRecord::FromJson(const nlohmann::json& j) {
  RunRecord r;
  r.key = j.at("key").get<std::string>();
  r.config = HyperConfig::FromJson(j.at("config"));
  r.approach = j.at("approach").get<std::string>();
  r.pattern_set_hash = j.value("pattern_set_hash", "");
  r.completed = j.at("completed").get<bool>();
  r.error = j.value("error", "");
  if (j.contains("dev2")) r.dev2 = MetricsFromJson(j.at("dev2"));
  r.epoch_losses = j.value("epoch_losses", std::vector<double>{});
  r.checkpoint = j.value("checkpoint", "");
  r.wall_seconds = j.value("wall_seconds", 0.0);
  if (r.completed != r.dev2.has_value()) throw ConfigError("run record '" + r.key + "' is inconsistent");
  return r;
}

namespace {

std::unordered_map<std::string, RunRecord> ReadLedger(const std::filesystem::path& path) {
  std::unordered_map<std::string, RunRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    try {
      RunRecord r = RunRecord::FromJson(nlohmann::json::parse(line));
      out.insert_or_assign(r.key, std::move(r));
    } catch (const std::exception&) {
      // A torn final line from an interrupted run is ignored.
    }
  }
  return out;
}

class LedgerWriter {
 public:
  explicit LedgerWriter(std::optional<std::filesystem::path> path) : path_(std::move(path)) {}

  void Append(const RunRecord& r) {
    if (!path_) return;
    const std::string line = r.ToJson().dump() + "\n";
    std::lock_guard<std::mutex> lock(mu_);
    std::ofstream out(*path_, std::ios::binary | std::ios::app);
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.flush();
    if (!out) throw ConfigError("cannot append to ledger '" + path_->string() + "'");
  }

 private:
  std::optional<std::filesystem::path> path_;
  std::mutex mu_;
};

}  // namespace

SearchResult RunSearch(const ModelFactory& factory, std::span<const HyperConfig> configs,
                       std::span<const EntailmentInstance> train, std::span<const EntailmentInstance> dev2,
                       const SearchOptions& options) {
  if (configs.empty()) throw ContractError("run_search needs at least one config");
  const LiicModel prototype = factory();
  const std::string approach(ApproachName(prototype.approach()));
  const std::string pattern_hash = prototype.pattern_set() ? prototype.pattern_set()->Hash() : "";
  const std::string data_key = DataHash(train) + DataHash(dev2);
  const std::string backend_id = prototype.classifier().backend().id();

  const auto ledger = options.ledger ? ReadLedger(*options.ledger) : std::unordered_map<std::string, RunRecord>{};
  LedgerWriter writer(options.ledger);
  if (options.checkpoint_dir) std::filesystem::create_directories(*options.checkpoint_dir);

  SearchResult result;
  result.records.resize(configs.size());
  std::vector<std::optional<LiicModel>> models(configs.size());

  auto run_one = [&](std::size_t i) {
    const HyperConfig& config = configs[i];
    const std::string key = Hex64(Fnv1a64(config.ToJson().dump() + approach + pattern_hash + data_key +
                                          backend_id + std::to_string(options.train.chunk_size)));
    if (auto it = ledger.find(key); it != ledger.end()) {
      result.records[i] = it->second;
      return;
    }
    const auto start = std::chrono::steady_clock::now();
    RunRecord record;
    record.key = key;
    record.config = config;
    record.approach = approach;
    record.pattern_set_hash = pattern_hash;
    LiicModel model = factory();
    const TrainOutcome outcome = Train(model, train, config, options.train);
    record.epoch_losses = outcome.epoch_losses;
    record.error = outcome.error;
    if (outcome.completed) {
      try {
        TuneModelThreshold(model, dev2);
        record.dev2 = EvaluateModel(model, dev2);
        record.completed = true;
      } catch (const NumericError& e) {
        record.error = e.what();
      }
    }
    if (record.completed && options.checkpoint_dir) {
      const auto path = *options.checkpoint_dir / (key + ".json");
      SaveCheckpoint(path, model, {{"config", config.ToJson()}, {"run_key", key}});
      record.checkpoint = path.string();
    }
    record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    writer.Append(record);
    if (record.completed) models[i] = std::move(model);
    result.records[i] = std::move(record);
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(options.threads, configs.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) run_one(i);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < configs.size(); i += workers) run_one(i);
      }));
    }
    for (auto& job : jobs) job.get();
  }

  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const RunRecord& r = result.records[i];
    const double auc = r.completed ? r.dev2->auc_restricted : 0.0;
    result.scores.push_back(auc);
    if (r.completed && (!result.best || auc > result.records[*result.best].dev2->auc_restricted)) result.best = i;
  }
  if (result.best) {
    const std::size_t b = *result.best;
    if (models[b]) {
      result.best_model = std::move(models[b]);
    } else if (!result.records[b].checkpoint.empty() && std::filesystem::exists(result.records[b].checkpoint)) {
      result.best_model = LoadCheckpoint(result.records[b].checkpoint).model;
    } else {
      // Recorded in an earlier session without a checkpoint: retrain.
      LiicModel model = factory();
      Train(model, train, configs[b], options.train);
      TuneModelThreshold(model, dev2);
      result.best_model = std::move(model);
    }
  }
  return result;
}

AuditedSplit::AuditedSplit(DataSplit split) : split_(std::move(split)) {}

std::optional<Source> AuditedSplit::source() const {
  if (split_.instances.empty()) return std::nullopt;
  return split_.instances.front().source;
}

EntailmentInstance AuditedSplit::Features(std::size_t i) const {
  log_.push_back(Access::kFeatures);
  EntailmentInstance inst = split_.instances.at(i);
  inst.label = 0;
  return inst;
}

std::vector<int> AuditedSplit::Labels() const {
  log_.push_back(Access::kLabels);
  return LabelsOf(split_.instances);
}

bool AuditedSplit::LabelsReadLast() const {
  const auto last_feature = std::find(log_.rbegin(), log_.rend(), Access::kFeatures);
  return std::find(last_feature, log_.rend(), Access::kLabels) == log_.rend();
}

RunMetrics TransferEval(const LiicModel& model, const AuditedSplit& target) {
  if (const PatternSet* set = model.pattern_set(); set != nullptr && target.source() &&
                                                   set->mined_on == SourceName(*target.source())) {
    throw ContractError("pattern set was mined on the transfer target '" + set->mined_on + "'");
  }
  std::vector<double> scores;
  scores.reserve(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) scores.push_back(model.Score(target.Features(i)));
  return Evaluate(scores, target.Labels(), model.standard_threshold());
}

nlohmann::json SweepResult::ToJson() const {
  nlohmann::json cells_json = nlohmann::json::array();
  for (const auto& c : cells) {
    cells_json.push_back({{"train_n", c.train_n},
                          {"eval_n", c.eval_n},
                          {"train_patterns", c.train_patterns},
                          {"eval_patterns", c.eval_patterns},
                          {"clamped", c.clamped},
                          {"metrics", MetricsToJson(c.metrics)}});
  }
  return {{"n_values", n_values}, {"cells", cells_json}, {"warnings", warnings}};
}

SweepResult NSweep(std::span<const PatternRecord> ranked, std::span<const std::size_t> n_values, ScoringMode mode,
                   const PatternModelFactory& factory, const HyperConfig& config,
                   std::span<const EntailmentInstance> train, std::span<const EntailmentInstance> dev2,
                   std::span<const EntailmentInstance> test, const TrainOptions& options) {
  if (n_values.empty()) throw ContractError("n_sweep needs at least one n");
  SweepResult result;
  result.n_values.assign(n_values.begin(), n_values.end());
  auto select = [&](std::size_t n) {
    Selection sel = SelectTopN(ranked, n, mode);
    if (sel.short_pool) {
      result.warnings.push_back("pool has fewer than " + std::to_string(n) + " patterns; clamped to " +
                                std::to_string(sel.patterns.patterns.size()));
    }
    return sel;
  };
  for (std::size_t train_n : n_values) {
    const Selection train_sel = select(train_n);
    LiicModel model = factory(train_sel.patterns);
    const TrainOutcome outcome = Train(model, train, config, options);
    if (!outcome.completed) result.warnings.push_back("training at n=" + std::to_string(train_n) + " failed: " + outcome.error);
    for (std::size_t eval_n : n_values) {
      const Selection eval_sel = select(eval_n);
      model.set_pattern_set(eval_sel.patterns);
      SweepCell cell;
      cell.train_n = train_n;
      cell.eval_n = eval_n;
      cell.train_patterns = train_sel.patterns.patterns.size();
      cell.eval_patterns = eval_sel.patterns.patterns.size();
      cell.clamped = train_sel.short_pool || eval_sel.short_pool;
      if (outcome.completed) {
        TuneModelThreshold(model, dev2);
        cell.metrics = EvaluateModel(model, test);
      }
      result.cells.push_back(cell);
    }
  }
  return result;
}

}  // namespace liic
