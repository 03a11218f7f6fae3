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

// Deterministic in-process backend for tests and desk-scale experiments.
//
// Tokenization: whitespace split, lowercase, leading/trailing punctuation
// stripped, empty tokens dropped.
//
// Hash embedding of token t, component j (0-based), for backend seed s:
//
//   e_j(t) = 2 * U(SplitMix64(Fnv1a64(t) + s * 0x9E3779B97F4A7C15 + j)) - 1
//
// where U maps the top 53 bits to [0, 1). Registered tokens start at their hash
// embedding and become trainable parameters.
//
// Segment gains: g_k = 1 + 0.5 * e("<seg" k ">") for segment k in {0, 1}.
// Aggregate of a single text or a pair:
//
//   r = sum_k g_k (*) mean_{t in segment k} e(t)
//
// with (*) the componentwise product; an empty segment contributes zero.
// Pairs are cut from the right once the total token count exceeds max_length.
//
// Completions: a query whose exact text has configured completions returns
// those. Otherwise every token v of the completion vocabulary gets the logit
// temperature * <e(v), r_ctx> / sqrt(d), where r_ctx encodes the query with
// the mask removed, and probabilities are the softmax over the vocabulary.

#ifndef LIIC_MOCK_BACKEND_H_
#define LIIC_MOCK_BACKEND_H_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "liic/lmbackend.h"

namespace liic {

class MockBackend : public LmBackend {
 public:
  struct Options {
    std::size_t dim = 16;
    std::uint64_t seed = 0;
    std::size_t max_length = 128;
    std::string mask_token = "<mask>";
    double temperature = 4.0;
    std::vector<std::string> completion_vocabulary;
  };

  MockBackend() : MockBackend(Options{}) {}
  explicit MockBackend(Options options);

  static std::vector<std::string> Tokenize(std::string_view text);
  static std::vector<double> HashEmbedding(std::string_view token, std::size_t dim, std::uint64_t seed);

  std::string id() const override { return "mock"; }
  std::size_t dim() const override { return options_.dim; }
  std::string_view mask_token() const override { return options_.mask_token; }
  const Options& options() const { return options_; }

  AggregateRepr Encode(const TextInput& input) const override;
  std::vector<Completion> TopK(const MaskQuery& q) const override;
  std::size_t truncation_count() const override { return truncations_.load(); }

  void SetCompletions(std::string query_text, std::vector<Completion> completions);
  void SetCompletionVocabulary(std::vector<std::string> vocabulary);

  // Current embedding of `token` (trained value if registered).
  std::vector<double> Embedding(std::string_view token) const;
  void RegisterVocabulary(std::span<const std::string> tokens);
  std::size_t vocabulary_size() const { return vocab_order_.size(); }

  std::size_t num_encoder_parameters() const override { return table_.size(); }
  void PrepareTraining(std::span<const TextInput> inputs) override;
  void GetEncoderParameters(std::span<double> out) const override;
  void SetEncoderParameters(std::span<const double> values) override;
  void BackpropagateEncoder(const TextInput& input, std::span<const double> grad_repr,
                            std::span<double> grad_params) const override;

  std::unique_ptr<LmBackend> Clone() const override;
  nlohmann::json SaveState() const override;
  static std::unique_ptr<MockBackend> FromState(const nlohmann::json& state);

 private:
  struct Segments {
    std::vector<std::string> tokens[2];
    bool truncated = false;
  };
  Segments Split(const TextInput& input) const;
  void AddEmbedding(std::string_view token, double scale, const std::vector<double>& gain,
                    std::vector<double>& acc) const;

  Options options_;
  std::vector<double> gain_[2];
  std::unordered_map<std::string, std::size_t> vocab_index_;
  std::vector<std::string> vocab_order_;
  std::vector<double> table_;
  std::map<std::string, std::vector<Completion>, std::less<>> overrides_;
  mutable std::atomic<std::size_t> truncations_{0};
};

}  // namespace liic

#endif  // LIIC_MOCK_BACKEND_H_
