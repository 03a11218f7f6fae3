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

#include "liic/datamodel.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "liic/errors.h"
#include "liic/random.h"

namespace liic {
namespace {

using nlohmann::json;

std::string Lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string Trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

const json& Require(const json& object, const char* key, std::size_t line) {
  auto it = object.find(key);
  if (it == object.end()) throw ParseError(std::string("missing field '") + key + "'", line);
  return *it;
}

std::string RequireString(const json& object, const char* key, std::size_t line) {
  const json& value = Require(object, key, line);
  if (!value.is_string()) throw ParseError(std::string("field '") + key + "' must be a string", line);
  return value.get<std::string>();
}

std::vector<std::string> StringList(const json& value, const char* key, std::size_t line) {
  if (!value.is_array()) throw ParseError(std::string("field '") + key + "' must be a list", line);
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const json& item : value) {
    if (!item.is_string()) {
      throw ParseError(std::string("field '") + key + "' must contain strings", line);
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

VerbalExpression ParseExpression(const json& object, const char* key, std::size_t line) {
  const json& value = Require(object, key, line);
  if (!value.is_object()) throw ParseError(std::string("field '") + key + "' must be an object", line);
  std::vector<std::string> tokens = StringList(Require(value, "tokens", line), "tokens", line);
  std::optional<std::string> lemma;
  if (auto it = value.find("lemma"); it != value.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("field 'lemma' must be a string or null", line);
    lemma = it->get<std::string>();
  }
  try {
    return VerbalExpression(std::move(tokens), std::move(lemma));
  } catch (const ContractError& e) {
    throw ParseError(std::string(key) + ": " + e.what(), line);
  }
}

json ExpressionToJson(const VerbalExpression& expr) {
  json out;
  out["tokens"] = expr.tokens();
  out["lemma"] = expr.lemma() ? json(*expr.lemma()) : json(nullptr);
  return out;
}

}  // namespace

std::string_view SourceName(Source source) {
  return source == Source::kLevyHolt ? "levyholt" : "sherliic";
}

Source ParseSource(std::string_view name) {
  if (name == "levyholt") return Source::kLevyHolt;
  if (name == "sherliic") return Source::kSherLIiC;
  throw ConfigError("unknown source tag '" + std::string(name) + "'");
}

std::string_view SplitNameString(SplitName name) {
  switch (name) {
    case SplitName::kTrain:
      return "train";
    case SplitName::kDev2:
      return "dev2";
    case SplitName::kDev1:
      return "dev1";
    case SplitName::kTest:
      return "test";
  }
  return "unknown";
}

VerbalExpression::VerbalExpression(std::vector<std::string> tokens, std::optional<std::string> lemma)
    : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw ContractError("verbal expression needs at least one token");
  for (const auto& token : tokens_) {
    if (token.empty() || token.find_first_of(" \t\r\n") != std::string::npos) {
      throw ContractError("verbal expression tokens must be non-empty single words");
    }
  }
  if (lemma) {
    std::string lowered = Lowercase(Trim(*lemma));
    if (lowered.empty()) throw ContractError("lemma must be non-empty when present");
    lemma_ = std::move(lowered);
  }
}

std::string VerbalExpression::Text() const {
  std::string out;
  for (const auto& token : tokens_) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

std::string VerbalExpression::Representative(Source source) const {
  if (source == Source::kSherLIiC && lemma_) {
    // Multi-word lemmas ("create in") are represented by their head word.
    return lemma_->substr(0, lemma_->find(' '));
  }
  return tokens_.back();
}

std::string EntailmentInstance::PremiseSentence() const {
  return RenderSentence(prem, arg_left, arg_right);
}

std::string EntailmentInstance::HypothesisSentence() const {
  return RenderSentence(hypo, arg_left, arg_right);
}

void EntailmentInstance::Validate() const {
  if (prem.tokens() == hypo.tokens()) {
    throw ContractError("instance '" + id + "': premise and hypothesis expressions are identical");
  }
  if (arg_left.empty() || arg_right.empty()) {
    throw ContractError("instance '" + id + "': both arguments must be non-empty");
  }
  if (label != 0 && label != 1) {
    throw ContractError("instance '" + id + "': label must be 0 or 1");
  }
}

std::string RenderSentence(const VerbalExpression& expr, std::string_view arg_left,
                           std::string_view arg_right) {
  std::string out = Trim(arg_left);
  const std::string middle = expr.Text();
  if (!middle.empty()) {
    if (!out.empty()) out += ' ';
    out += middle;
  }
  const std::string right = Trim(arg_right);
  if (!right.empty()) {
    if (!out.empty()) out += ' ';
    out += right;
  }
  return out;
}

EntailmentInstance ParseInstance(std::string_view json_line, std::size_t line) {
  json record;
  try {
    record = json::parse(json_line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line);
  }
  if (!record.is_object()) throw ParseError("record must be a JSON object", line);

  EntailmentInstance inst;
  inst.id = RequireString(record, "id", line);
  inst.prem = ParseExpression(record, "prem", line);
  inst.hypo = ParseExpression(record, "hypo", line);

  auto argument = [&](const char* key, const char* candidates_key) {
    if (auto it = record.find(candidates_key); it != record.end() && !it->is_null()) {
      auto candidates = StringList(*it, candidates_key, line);
      if (!candidates.empty()) return candidates.front();
    }
    return RequireString(record, key, line);
  };
  inst.arg_left = argument("arg_left", "arg_candidates_left");
  inst.arg_right = argument("arg_right", "arg_candidates_right");

  const json& label = Require(record, "label", line);
  if (!label.is_number_integer()) throw ParseError("field 'label' must be 0 or 1", line);
  inst.label = label.get<int>();
  inst.source = ParseSource(RequireString(record, "source", line));

  try {
    inst.Validate();
  } catch (const ContractError& e) {
    throw ParseError(e.what(), line);
  }
  return inst;
}

std::string SerializeInstance(const EntailmentInstance& instance) {
  json out;
  out["id"] = instance.id;
  out["prem"] = ExpressionToJson(instance.prem);
  out["hypo"] = ExpressionToJson(instance.hypo);
  out["arg_left"] = instance.arg_left;
  out["arg_right"] = instance.arg_right;
  out["label"] = instance.label;
  out["source"] = std::string(SourceName(instance.source));
  return out.dump();
}

DataSplit ReadDataset(std::istream& in, Source source, SplitName name) {
  DataSplit split{name, {}};
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    EntailmentInstance inst = ParseInstance(line, line_number);
    if (inst.source != source) {
      throw ConfigError("line " + std::to_string(line_number) + ": record tagged '" +
                        std::string(SourceName(inst.source)) + "' in a '" +
                        std::string(SourceName(source)) + "' dataset");
    }
    split.instances.push_back(std::move(inst));
  }
  return split;
}

DataSplit LoadDataset(const std::filesystem::path& path, Source source, SplitName name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open dataset '" + path.string() + "'");
  return ReadDataset(in, source, name);
}

void WriteDataset(std::ostream& out, const DataSplit& split) {
  for (const auto& inst : split.instances) out << SerializeInstance(inst) << '\n';
}

void SaveDataset(const std::filesystem::path& path, const DataSplit& split) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write dataset '" + path.string() + "'");
  WriteDataset(out, split);
}

std::size_t Dev1TrainSize(Source source, std::size_t dev1_size) {
  if (source == Source::kLevyHolt && dev1_size == 5486) return 4388;
  if (source == Source::kSherLIiC && dev1_size == 998) return 797;
  return static_cast<std::size_t>(std::llround(0.8 * static_cast<double>(dev1_size)));
}

std::pair<DataSplit, DataSplit> SplitDev1(const DataSplit& dev1, std::uint64_t seed) {
  if (dev1.empty()) throw ContractError("split_dev1 needs a non-empty dev1 portion");
  return SplitDev1(dev1, seed, Dev1TrainSize(dev1.instances.front().source, dev1.size()));
}

std::pair<DataSplit, DataSplit> SplitDev1(const DataSplit& dev1, std::uint64_t seed,
                                          std::size_t train_size) {
  if (dev1.empty()) throw ContractError("split_dev1 needs a non-empty dev1 portion");
  if (train_size > dev1.size()) throw ContractError("train size exceeds dev1 size");
  std::unordered_set<std::string> ids;
  for (const auto& inst : dev1.instances) {
    if (!ids.insert(inst.id).second) throw ContractError("duplicate id '" + inst.id + "' in dev1");
  }

  std::vector<std::size_t> order(dev1.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.Shuffle(std::span<std::size_t>(order));

  std::vector<bool> in_train(dev1.size(), false);
  for (std::size_t i = 0; i < train_size; ++i) in_train[order[i]] = true;

  DataSplit train{SplitName::kTrain, {}};
  DataSplit dev2{SplitName::kDev2, {}};
  train.instances.reserve(train_size);
  dev2.instances.reserve(dev1.size() - train_size);
  for (std::size_t i = 0; i < dev1.size(); ++i) {
    (in_train[i] ? train : dev2).instances.push_back(dev1.instances[i]);
  }
  return {std::move(train), std::move(dev2)};
}

}  // namespace liic
