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

// The language-model backend contract and the two-layer classification head
// that every approach puts on top of it.
//
// A backend maps one sentence, or a sentence pair, to an aggregate vector and
// answers single-mask completion queries. The head turns an aggregate vector
// into a binary distribution:
//
//   h = tanh(drop(r) W1 + b1)
//   p = softmax(drop(h) W2 + b2)
//
// W1/b1 stand in for the pretrained pooler; W2/b2 are trained from scratch.

#ifndef LIIC_LMBACKEND_H_
#define LIIC_LMBACKEND_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "liic/random.h"

namespace liic {

// One sentence, or a (first, second) pair joined with the backend's separator.
struct TextInput {
  std::string first;
  std::optional<std::string> second;

  static TextInput Single(std::string text) { return {std::move(text), std::nullopt}; }
  static TextInput Pair(std::string a, std::string b) { return {std::move(a), std::move(b)}; }
  bool is_pair() const { return second.has_value(); }

  friend bool operator==(const TextInput&, const TextInput&) = default;
};

struct AggregateRepr {
  std::vector<double> values;
  // Set when the backend cut the input at its maximum length.
  bool truncated = false;

  std::size_t dim() const { return values.size(); }
};

struct MaskQuery {
  std::string text;
  std::size_t k = 100;
};

struct Completion {
  std::string token;
  double probability = 0.0;
};

class LmBackend {
 public:
  virtual ~LmBackend() = default;

  virtual std::string id() const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::string_view mask_token() const = 0;

  // Deterministic for identical inputs. Safe to call concurrently.
  virtual AggregateRepr Encode(const TextInput& input) const = 0;
  virtual std::vector<AggregateRepr> EncodeBatch(std::span<const TextInput> inputs) const;

  // At most q.k completions for the single mask in q.text, sorted by
  // descending probability. Throws ContractError unless the text holds exactly
  // one mask token.
  virtual std::vector<Completion> TopK(const MaskQuery& q) const = 0;

  // Inputs cut at the maximum length since construction.
  virtual std::size_t truncation_count() const { return 0; }

  // Encoder parameters trained jointly with the head. Backends that only
  // serve frozen vectors report zero and ignore the rest of this block.
  virtual std::size_t num_encoder_parameters() const { return 0; }
  virtual void PrepareTraining(std::span<const TextInput> /*inputs*/) {}
  virtual void GetEncoderParameters(std::span<double> /*out*/) const {}
  virtual void SetEncoderParameters(std::span<const double> /*values*/) {}
  // Adds d(loss)/d(encoder params) given d(loss)/d(repr) for `input`.
  virtual void BackpropagateEncoder(const TextInput& /*input*/, std::span<const double> /*grad_repr*/,
                                    std::span<double> /*grad_params*/) const {}

  virtual std::unique_ptr<LmBackend> Clone() const = 0;
  virtual nlohmann::json SaveState() const = 0;
};

// Throws ContractError unless `text` contains `mask` exactly once and k >= 1.
void ValidateMaskQuery(const MaskQuery& q, std::string_view mask);

enum class ParamOrigin { kPretrained, kFresh };

// Head weights, row-major. W1 is d x d, W2 is d x 2; inputs are row vectors.
struct HeadParams {
  std::size_t dim = 0;
  std::vector<double> w1;
  std::vector<double> b1;
  std::vector<double> w2;
  std::vector<double> b2;
  double dropout_p = 0.1;
  ParamOrigin w1_origin = ParamOrigin::kPretrained;
  ParamOrigin w2_origin = ParamOrigin::kFresh;

  static HeadParams Zeros(std::size_t dim);
  // W1 is a seeded random orthogonal matrix, W2 ~ N(0, 0.02^2), biases zero.
  static HeadParams Initialize(std::size_t dim, std::uint64_t seed);

  std::size_t num_parameters() const { return dim * dim + dim + 2 * dim + 2; }
  // Layout: W1 | b1 | W2 | b2.
  void Flatten(std::span<double> out) const;
  void Assign(std::span<const double> values);
  double w1_at(std::size_t i, std::size_t j) const { return w1[i * dim + j]; }
  double w2_at(std::size_t i, std::size_t k) const { return w2[i * 2 + k]; }

  nlohmann::json ToJson() const;
  static HeadParams FromJson(const nlohmann::json& j);
};

struct Probs {
  double p0 = 0.5;
  double p1 = 0.5;
  double operator[](int label) const { return label == 1 ? p1 : p0; }
};

// Log arguments below this value are clamped.
inline constexpr double kLogClamp = 1e-12;

// Dropout is active iff `dropout_rng` is non-null. Throws NumericError on a
// non-finite forward pass; the message lists the parameter norms.
Probs HeadForward(const AggregateRepr& repr, const HeadParams& params, Rng* dropout_rng = nullptr);

struct LossTerm {
  double loss = 0.0;
  bool clamped = false;
};

// Adds the gradient of weight * -log p_target to `grad` (same shape as
// `params`) and to `grad_repr` when it is non-empty.
LossTerm HeadLossAndGradient(const AggregateRepr& repr, const HeadParams& params, int target,
                             double weight, Rng* dropout_rng, HeadParams& grad,
                             std::span<double> grad_repr);

struct AdamConstants {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t step = 0;
};

// One Adam update with decoupled weight decay:
//   p <- p - lr * (m_hat / (sqrt(v_hat) + eps) + weight_decay * p)
void AdamUpdate(std::span<double> params, std::span<const double> grads, AdamState& state, double lr,
                double weight_decay, const AdamConstants& constants = {});

// A training target: weight * -log P(target | input).
struct WeightedExample {
  TextInput input;
  int target = 0;
  double weight = 1.0;
};

struct LossResult {
  double loss = 0.0;
  std::size_t clamped = 0;
};

// Head plus backend. Inference is reentrant; training needs exclusive access.
class SequenceClassifier {
 public:
  SequenceClassifier(std::shared_ptr<LmBackend> backend, HeadParams head);

  const LmBackend& backend() const { return *backend_; }
  LmBackend& mutable_backend() { return *backend_; }
  std::shared_ptr<LmBackend> shared_backend() const { return backend_; }
  const HeadParams& head() const { return head_; }
  HeadParams& mutable_head() { return head_; }

  // Evaluation mode: no dropout.
  Probs Predict(const TextInput& input) const;

  // Sum of weighted NLL terms, no gradient.
  LossResult Loss(std::span<const WeightedExample> batch) const;

  std::size_t num_parameters() const;
  std::vector<double> Parameters() const;
  void SetParameters(std::span<const double> values);

  // Adds the gradient of the summed loss into `grad` (size num_parameters()).
  // Dropout is active iff `dropout_rng` is non-null.
  LossResult AccumulateGradient(std::span<const WeightedExample> batch, std::span<double> grad,
                                Rng* dropout_rng) const;

  SequenceClassifier Clone() const;

 private:
  std::shared_ptr<LmBackend> backend_;
  HeadParams head_;
};

struct StepResult {
  double sum_loss = 0.0;
  double mean_loss = 0.0;
  std::size_t clamped = 0;
};

// Applies a summed gradient with Adam and writes the parameters back.
void ApplyGradient(SequenceClassifier& model, std::span<const double> grad, AdamState& state, double lr,
                   double weight_decay, const AdamConstants& constants = {});

// Gradient of the batch loss followed by one Adam update. The mean loss is
// taken over batch entries. Throws NumericError on a non-finite loss, leaving
// the parameters untouched.
StepResult TrainStep(SequenceClassifier& model, std::span<const WeightedExample> batch,
                     AdamState& state, double lr, double weight_decay, Rng* dropout_rng,
                     const AdamConstants& constants = {});

}  // namespace liic

#endif  // LIIC_LMBACKEND_H_
