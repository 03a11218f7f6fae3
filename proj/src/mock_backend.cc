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

#include "liic/mock_backend.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "liic/errors.h"
#include "liic/random.h"

namespace liic {
namespace {

void SortCompletions(std::vector<Completion>& completions) {
  std::stable_sort(completions.begin(), completions.end(), [](const Completion& a, const Completion& b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.token < b.token;
  });
}

}  // namespace

MockBackend::MockBackend(Options options) : options_(std::move(options)) {
  if (options_.dim == 0) throw ContractError("mock backend dimension must be positive");
  if (options_.max_length == 0) throw ContractError("mock backend max_length must be positive");
  for (int k = 0; k < 2; ++k) {
    gain_[k] = HashEmbedding("<seg" + std::to_string(k) + ">", options_.dim, options_.seed);
    for (auto& g : gain_[k]) g = 1.0 + 0.5 * g;
  }
}

std::vector<std::string> MockBackend::Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view word = text.substr(pos, end - pos);
    pos = end;
    while (!word.empty() && std::ispunct(static_cast<unsigned char>(word.front()))) word.remove_prefix(1);
    while (!word.empty() && std::ispunct(static_cast<unsigned char>(word.back()))) word.remove_suffix(1);
    if (word.empty()) continue;
    std::string token(word);
    std::transform(token.begin(), token.end(), token.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::vector<double> MockBackend::HashEmbedding(std::string_view token, std::size_t dim, std::uint64_t seed) {
  std::vector<double> out(dim);
  const std::uint64_t base = Fnv1a64(token) + seed * kGoldenGamma;
  for (std::size_t j = 0; j < dim; ++j) out[j] = 2.0 * UnitInterval(SplitMix64(base + j)) - 1.0;
  return out;
}

MockBackend::Segments MockBackend::Split(const TextInput& input) const {
  Segments s;
  s.tokens[0] = Tokenize(input.first);
  if (input.second) s.tokens[1] = Tokenize(*input.second);
  std::size_t total = s.tokens[0].size() + s.tokens[1].size();
  if (total > options_.max_length) {
    s.truncated = true;
    std::size_t excess = total - options_.max_length;
    const std::size_t cut1 = std::min(excess, s.tokens[1].size());
    s.tokens[1].resize(s.tokens[1].size() - cut1);
    excess -= cut1;
    s.tokens[0].resize(s.tokens[0].size() - excess);
  }
  return s;
}

std::vector<double> MockBackend::Embedding(std::string_view token) const {
  if (auto it = vocab_index_.find(std::string(token)); it != vocab_index_.end()) {
    const auto first = table_.begin() + static_cast<std::ptrdiff_t>(it->second * options_.dim);
    return std::vector<double>(first, first + static_cast<std::ptrdiff_t>(options_.dim));
  }
  return HashEmbedding(token, options_.dim, options_.seed);
}

void MockBackend::AddEmbedding(std::string_view token, double scale, const std::vector<double>& gain,
                               std::vector<double>& acc) const {
  const std::size_t d = options_.dim;
  if (auto it = vocab_index_.find(std::string(token)); it != vocab_index_.end()) {
    const double* e = &table_[it->second * d];
    for (std::size_t j = 0; j < d; ++j) acc[j] += scale * gain[j] * e[j];
    return;
  }
  const std::uint64_t base = Fnv1a64(token) + options_.seed * kGoldenGamma;
  for (std::size_t j = 0; j < d; ++j) {
    acc[j] += scale * gain[j] * (2.0 * UnitInterval(SplitMix64(base + j)) - 1.0);
  }
}

AggregateRepr MockBackend::Encode(const TextInput& input) const {
  const Segments s = Split(input);
  AggregateRepr repr;
  repr.values.assign(options_.dim, 0.0);
  repr.truncated = s.truncated;
  if (s.truncated) truncations_.fetch_add(1);
  for (int k = 0; k < 2; ++k) {
    const auto& tokens = s.tokens[k];
    if (tokens.empty()) continue;
    const double scale = 1.0 / static_cast<double>(tokens.size());
    for (const auto& t : tokens) AddEmbedding(t, scale, gain_[k], repr.values);
  }
  return repr;
}

std::vector<Completion> MockBackend::TopK(const MaskQuery& q) const {
  ValidateMaskQuery(q, options_.mask_token);
  std::vector<Completion> out;
  if (auto it = overrides_.find(q.text); it != overrides_.end()) {
    out = it->second;
  } else if (!options_.completion_vocabulary.empty()) {
    std::string context = q.text;
    context.replace(context.find(options_.mask_token), options_.mask_token.size(), " ");
    const AggregateRepr r = Encode(TextInput::Single(context));
    const double scale = options_.temperature / std::sqrt(static_cast<double>(options_.dim));
    std::vector<double> logits;
    logits.reserve(options_.completion_vocabulary.size());
    for (const auto& v : options_.completion_vocabulary) {
      const std::vector<double> e = Embedding(v);
      double dot = 0.0;
      for (std::size_t j = 0; j < options_.dim; ++j) dot += e[j] * r.values[j];
      logits.push_back(scale * dot);
    }
    const double max_logit = *std::max_element(logits.begin(), logits.end());
    double z = 0.0;
    for (auto& l : logits) z += (l = std::exp(l - max_logit));
    for (std::size_t i = 0; i < logits.size(); ++i) {
      out.push_back({options_.completion_vocabulary[i], logits[i] / z});
    }
  }
  SortCompletions(out);
  if (out.size() > q.k) out.resize(q.k);
  return out;
}

void MockBackend::SetCompletions(std::string query_text, std::vector<Completion> completions) {
  for (const auto& c : completions) {
    if (!(c.probability > 0.0 && c.probability <= 1.0)) {
      throw ContractError("configured completion probabilities must lie in (0, 1]");
    }
  }
  overrides_[std::move(query_text)] = std::move(completions);
}

void MockBackend::SetCompletionVocabulary(std::vector<std::string> vocabulary) {
  options_.completion_vocabulary = std::move(vocabulary);
}

void MockBackend::RegisterVocabulary(std::span<const std::string> tokens) {
  for (const auto& token : tokens) {
    if (vocab_index_.contains(token)) continue;
    vocab_index_.emplace(token, vocab_order_.size());
    vocab_order_.push_back(token);
    const auto e = HashEmbedding(token, options_.dim, options_.seed);
    table_.insert(table_.end(), e.begin(), e.end());
  }
}

void MockBackend::PrepareTraining(std::span<const TextInput> inputs) {
  for (const auto& input : inputs) {
    RegisterVocabulary(Tokenize(input.first));
    if (input.second) RegisterVocabulary(Tokenize(*input.second));
  }
}

void MockBackend::GetEncoderParameters(std::span<double> out) const {
  if (out.size() != table_.size()) throw ContractError("encoder parameter size mismatch");
  std::copy(table_.begin(), table_.end(), out.begin());
}

void MockBackend::SetEncoderParameters(std::span<const double> values) {
  if (values.size() != table_.size()) throw ContractError("encoder parameter size mismatch");
  std::copy(values.begin(), values.end(), table_.begin());
}

void MockBackend::BackpropagateEncoder(const TextInput& input, std::span<const double> grad_repr,
                                       std::span<double> grad_params) const {
  if (grad_params.size() != table_.size()) throw ContractError("encoder gradient size mismatch");
  const Segments s = Split(input);
  const std::size_t d = options_.dim;
  for (int k = 0; k < 2; ++k) {
    const auto& tokens = s.tokens[k];
    if (tokens.empty()) continue;
    const double scale = 1.0 / static_cast<double>(tokens.size());
    for (const auto& t : tokens) {
      auto it = vocab_index_.find(t);
      if (it == vocab_index_.end()) continue;
      double* g = &grad_params[it->second * d];
      for (std::size_t j = 0; j < d; ++j) g[j] += scale * gain_[k][j] * grad_repr[j];
    }
  }
}

std::unique_ptr<LmBackend> MockBackend::Clone() const {
  auto copy = std::make_unique<MockBackend>(options_);
  copy->vocab_index_ = vocab_index_;
  copy->vocab_order_ = vocab_order_;
  copy->table_ = table_;
  copy->overrides_ = overrides_;
  return copy;
}

nlohmann::json MockBackend::SaveState() const {
  return {{"type", "mock"},
          {"dim", options_.dim},
          {"seed", options_.seed},
          {"max_length", options_.max_length},
          {"mask_token", options_.mask_token},
          {"temperature", options_.temperature},
          {"completion_vocabulary", options_.completion_vocabulary},
          {"vocabulary", vocab_order_},
          {"table", table_}};
}

std::unique_ptr<MockBackend> MockBackend::FromState(const nlohmann::json& state) {
  if (state.value("type", "") != "mock") throw ConfigError("backend state is not a mock backend");
  Options options;
  options.dim = state.at("dim").get<std::size_t>();
  options.seed = state.at("seed").get<std::uint64_t>();
  options.max_length = state.at("max_length").get<std::size_t>();
  options.mask_token = state.at("mask_token").get<std::string>();
  options.temperature = state.at("temperature").get<double>();
  options.completion_vocabulary = state.at("completion_vocabulary").get<std::vector<std::string>>();
  auto backend = std::make_unique<MockBackend>(std::move(options));
  const auto vocab = state.at("vocabulary").get<std::vector<std::string>>();
  backend->RegisterVocabulary(vocab);
  backend->SetEncoderParameters(state.at("table").get<std::vector<double>>());
  return backend;
}

}  // namespace liic
