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

// Dataset schemas and ingestion for Levy/Holt- and SherLIiC-shaped data.
//
// Both benchmarks are consumed in one normalized JSONL layout, one instance
// per line:
//
//   {"id": "...", "prem": {"tokens": [...], "lemma": "..."|null},
//    "hypo": {...}, "arg_left": "...", "arg_right": "...", "label": 0|1,
//    "source": "levyholt"|"sherliic",
//    "arg_candidates_left": [...], "arg_candidates_right": [...]}
//
// The candidate lists are optional. When present, the first candidate of each
// side becomes the instance argument.

#ifndef LIIC_DATAMODEL_H_
#define LIIC_DATAMODEL_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liic {

enum class Source { kLevyHolt, kSherLIiC };

std::string_view SourceName(Source source);
// Throws ConfigError for anything but "levyholt" / "sherliic".
Source ParseSource(std::string_view name);

class VerbalExpression {
 public:
  VerbalExpression() = default;
  // Throws ContractError if `tokens` is empty or contains an empty token, or if
  // `lemma` is present but empty. The lemma is stored lowercased.
  VerbalExpression(std::vector<std::string> tokens, std::optional<std::string> lemma = std::nullopt);

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::optional<std::string>& lemma() const { return lemma_; }

  // Tokens joined by single spaces.
  std::string Text() const;

  // Single token standing in for the whole expression during masked ranking:
  // the predicate lemma for SherLIiC (when known), the last token otherwise.
  std::string Representative(Source source) const;

  friend bool operator==(const VerbalExpression&, const VerbalExpression&) = default;

 private:
  std::vector<std::string> tokens_;
  std::optional<std::string> lemma_;
};

struct EntailmentInstance {
  std::string id;
  VerbalExpression prem;
  VerbalExpression hypo;
  std::string arg_left;
  std::string arg_right;
  int label = 0;
  Source source = Source::kLevyHolt;

  std::string PremiseSentence() const;
  std::string HypothesisSentence() const;

  // Throws ContractError when prem and hypo have identical tokens, an argument
  // is empty or the label is not binary.
  void Validate() const;

  friend bool operator==(const EntailmentInstance&, const EntailmentInstance&) = default;
};

enum class SplitName { kTrain, kDev2, kDev1, kTest };

std::string_view SplitNameString(SplitName name);

struct DataSplit {
  SplitName name = SplitName::kDev1;
  std::vector<EntailmentInstance> instances;

  std::size_t size() const { return instances.size(); }
  bool empty() const { return instances.empty(); }

  friend bool operator==(const DataSplit&, const DataSplit&) = default;
};

// "arg_left expr arg_right", with empty arguments dropped.
std::string RenderSentence(const VerbalExpression& expr, std::string_view arg_left,
                           std::string_view arg_right);

// Parses one JSONL record. `line` is used for error messages only.
EntailmentInstance ParseInstance(std::string_view json_line, std::size_t line);
std::string SerializeInstance(const EntailmentInstance& instance);

// Reads a JSONL file in file order. Every record must carry `source` as its
// source tag; a record tagged with another source is a ConfigError. Malformed
// records raise ParseError with the 1-based line number.
DataSplit LoadDataset(const std::filesystem::path& path, Source source,
                      SplitName name = SplitName::kDev1);
DataSplit ReadDataset(std::istream& in, Source source, SplitName name = SplitName::kDev1);
void WriteDataset(std::ostream& out, const DataSplit& split);
void SaveDataset(const std::filesystem::path& path, const DataSplit& split);

// Number of training instances carved out of a dev1 portion of `dev1_size`.
// The two published dev portions map to the published split sizes (Levy/Holt
// 5,486 -> 4,388; SherLIiC 998 -> 797). Everything else gets round(0.8 * n).
std::size_t Dev1TrainSize(Source source, std::size_t dev1_size);

// Shuffles ids with a seeded PRNG and cuts at Dev1TrainSize(). Both halves keep
// the relative order of `dev1`. Throws ContractError on an empty dev1 or
// duplicate ids.
std::pair<DataSplit, DataSplit> SplitDev1(const DataSplit& dev1, std::uint64_t seed = 0);
std::pair<DataSplit, DataSplit> SplitDev1(const DataSplit& dev1, std::uint64_t seed,
                                          std::size_t train_size);

}  // namespace liic

#endif  // LIIC_DATAMODEL_H_
