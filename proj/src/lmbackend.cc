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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "liic/errors.h"

namespace liic {
namespace {

double Norm(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return std::sqrt(sum);
}

[[noreturn]] void ThrowNonFinite(const HeadParams& params, std::string_view where) {
  std::ostringstream msg;
  msg << "non-finite value in head " << where << " (|W1|=" << Norm(params.w1)
      << ", |b1|=" << Norm(params.b1) << ", |W2|=" << Norm(params.w2) << ", |b2|=" << Norm(params.b2)
      << ")";
  throw NumericError(msg.str());
}

void CheckShapes(const AggregateRepr& repr, const HeadParams& params) {
  if (repr.dim() != params.dim || params.w1.size() != params.dim * params.dim ||
      params.b1.size() != params.dim || params.w2.size() != params.dim * 2 || params.b2.size() != 2) {
    throw ContractError("head shapes do not match representation of dimension " +
                        std::to_string(repr.dim()));
  }
}

// Inverted dropout: kept units are scaled by 1/(1-p).
std::vector<double> DropoutMask(std::size_t n, double p, Rng* rng) {
  std::vector<double> mask(n, 1.0);
  if (rng == nullptr || p <= 0.0) return mask;
  const double keep_scale = 1.0 / (1.0 - p);
  for (auto& m : mask) m = rng->Uniform() < p ? 0.0 : keep_scale;
  return mask;
}

struct Activations {
  std::vector<double> r_in;  // drop(r)
  std::vector<double> hidden;
  std::vector<double> h_mask;
  std::vector<double> r_mask;
  Probs probs;
};

Activations Forward(const AggregateRepr& repr, const HeadParams& params, Rng* rng) {
  CheckShapes(repr, params);
  const std::size_t d = params.dim;
  Activations a;
  a.r_mask = DropoutMask(d, params.dropout_p, rng);
  a.r_in.resize(d);
  for (std::size_t i = 0; i < d; ++i) a.r_in[i] = repr.values[i] * a.r_mask[i];

  a.hidden = params.b1;
  for (std::size_t i = 0; i < d; ++i) {
    const double x = a.r_in[i];
    if (x == 0.0) continue;
    const double* row = &params.w1[i * d];
    for (std::size_t j = 0; j < d; ++j) a.hidden[j] += x * row[j];
  }
  for (auto& h : a.hidden) h = std::tanh(h);

  a.h_mask = DropoutMask(d, params.dropout_p, rng);
  double z0 = params.b2[0];
  double z1 = params.b2[1];
  for (std::size_t i = 0; i < d; ++i) {
    const double h = a.hidden[i] * a.h_mask[i];
    z0 += h * params.w2[i * 2];
    z1 += h * params.w2[i * 2 + 1];
  }
  if (!std::isfinite(z0) || !std::isfinite(z1)) ThrowNonFinite(params, "forward pass");
  const double zmax = std::max(z0, z1);
  const double e0 = std::exp(z0 - zmax);
  const double e1 = std::exp(z1 - zmax);
  a.probs.p0 = e0 / (e0 + e1);
  a.probs.p1 = e1 / (e0 + e1);
  return a;
}

}  // namespace

std::vector<AggregateRepr> LmBackend::EncodeBatch(std::span<const TextInput> inputs) const {
  std::vector<AggregateRepr> out;
  out.reserve(inputs.size());
  for (const auto& input : inputs) out.push_back(Encode(input));
  return out;
}

void ValidateMaskQuery(const MaskQuery& q, std::string_view mask) {
  if (q.k < 1) throw ContractError("mask query needs k >= 1");
  std::size_t count = 0;
  for (auto pos = q.text.find(mask); pos != std::string::npos; pos = q.text.find(mask, pos + mask.size())) {
    ++count;
  }
  if (count != 1) {
    throw ContractError("mask query must contain exactly one '" + std::string(mask) + "', found " +
                        std::to_string(count));
  }
}

HeadParams HeadParams::Zeros(std::size_t dim) {
  HeadParams p;
  p.dim = dim;
  p.w1.assign(dim * dim, 0.0);
  p.b1.assign(dim, 0.0);
  p.w2.assign(dim * 2, 0.0);
  p.b2.assign(2, 0.0);
  return p;
}

HeadParams HeadParams::Initialize(std::size_t dim, std::uint64_t seed) {
  HeadParams p = Zeros(dim);
  Rng rng(seed);
  // Gram-Schmidt over Gaussian rows.
  for (std::size_t i = 0; i < dim; ++i) {
    double* row = &p.w1[i * dim];
    for (std::size_t j = 0; j < dim; ++j) row[j] = rng.Normal();
    for (std::size_t k = 0; k < i; ++k) {
      const double* prev = &p.w1[k * dim];
      const double dot = std::inner_product(row, row + dim, prev, 0.0);
      for (std::size_t j = 0; j < dim; ++j) row[j] -= dot * prev[j];
    }
    const double norm = std::sqrt(std::inner_product(row, row + dim, row, 0.0));
    for (std::size_t j = 0; j < dim; ++j) row[j] /= norm;
  }
  for (auto& w : p.w2) w = 0.02 * rng.Normal();
  return p;
}

void HeadParams::Flatten(std::span<double> out) const {
  if (out.size() != num_parameters()) throw ContractError("head flatten size mismatch");
  auto it = std::copy(w1.begin(), w1.end(), out.begin());
  it = std::copy(b1.begin(), b1.end(), it);
  it = std::copy(w2.begin(), w2.end(), it);
  std::copy(b2.begin(), b2.end(), it);
}

void HeadParams::Assign(std::span<const double> values) {
  if (values.size() != num_parameters()) throw ContractError("head assign size mismatch");
  auto it = values.begin();
  std::copy_n(it, w1.size(), w1.begin());
  it += static_cast<std::ptrdiff_t>(w1.size());
  std::copy_n(it, b1.size(), b1.begin());
  it += static_cast<std::ptrdiff_t>(b1.size());
  std::copy_n(it, w2.size(), w2.begin());
  it += static_cast<std::ptrdiff_t>(w2.size());
  std::copy_n(it, b2.size(), b2.begin());
}

nlohmann::json HeadParams::ToJson() const {
  return {{"dim", dim}, {"w1", w1}, {"b1", b1}, {"w2", w2}, {"b2", b2}, {"dropout_p", dropout_p}};
}

HeadParams HeadParams::FromJson(const nlohmann::json& j) {
  HeadParams p = Zeros(j.at("dim").get<std::size_t>());
  p.dropout_p = j.at("dropout_p").get<double>();
  auto fill = [&](const char* key, std::vector<double>& dst) {
    auto src = j.at(key).get<std::vector<double>>();
    if (src.size() != dst.size()) throw ParseError(std::string("head field '") + key + "' has wrong size", 0);
    dst = std::move(src);
  };
  fill("w1", p.w1);
  fill("b1", p.b1);
  fill("w2", p.w2);
  fill("b2", p.b2);
  return p;
}

Probs HeadForward(const AggregateRepr& repr, const HeadParams& params, Rng* dropout_rng) {
  return Forward(repr, params, dropout_rng).probs;
}

LossTerm HeadLossAndGradient(const AggregateRepr& repr, const HeadParams& params, int target,
                             double weight, Rng* dropout_rng, HeadParams& grad,
                             std::span<double> grad_repr) {
  if (target != 0 && target != 1) throw ContractError("target must be 0 or 1");
  const Activations a = Forward(repr, params, dropout_rng);
  const double p_target = a.probs[target];
  if (p_target < kLogClamp) return {-weight * std::log(kLogClamp), true};
  LossTerm term{-weight * std::log(p_target), false};

  const std::size_t d = params.dim;
  const double dz[2] = {weight * (a.probs.p0 - (target == 0 ? 1.0 : 0.0)),
                        weight * (a.probs.p1 - (target == 1 ? 1.0 : 0.0))};
  grad.b2[0] += dz[0];
  grad.b2[1] += dz[1];

  std::vector<double> du(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double h_in = a.hidden[i] * a.h_mask[i];
    grad.w2[i * 2] += h_in * dz[0];
    grad.w2[i * 2 + 1] += h_in * dz[1];
    const double dh = (params.w2[i * 2] * dz[0] + params.w2[i * 2 + 1] * dz[1]) * a.h_mask[i];
    du[i] = dh * (1.0 - a.hidden[i] * a.hidden[i]);
    grad.b1[i] += du[i];
  }
  for (std::size_t i = 0; i < d; ++i) {
    const double x = a.r_in[i];
    double* row = &grad.w1[i * d];
    for (std::size_t j = 0; j < d; ++j) row[j] += x * du[j];
  }
  if (!grad_repr.empty()) {
    for (std::size_t i = 0; i < d; ++i) {
      const double* row = &params.w1[i * d];
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += row[j] * du[j];
      grad_repr[i] += acc * a.r_mask[i];
    }
  }
  return term;
}

void AdamUpdate(std::span<double> params, std::span<const double> grads, AdamState& state, double lr,
                double weight_decay, const AdamConstants& c) {
  if (lr < 0.0) throw ContractError("learning rate must be non-negative");
  if (params.size() != grads.size()) throw ContractError("parameter/gradient size mismatch");
  if (state.m.empty()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  if (state.m.size() != params.size()) throw ContractError("optimizer state size mismatch");
  ++state.step;
  const double bias1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = c.beta1 * state.m[i] + (1.0 - c.beta1) * grads[i];
    state.v[i] = c.beta2 * state.v[i] + (1.0 - c.beta2) * grads[i] * grads[i];
    const double m_hat = state.m[i] / bias1;
    const double v_hat = state.v[i] / bias2;
    params[i] -= lr * (m_hat / (std::sqrt(v_hat) + c.epsilon) + weight_decay * params[i]);
  }
}

SequenceClassifier::SequenceClassifier(std::shared_ptr<LmBackend> backend, HeadParams head)
    : backend_(std::move(backend)), head_(std::move(head)) {
  if (!backend_) throw ContractError("classifier needs a backend");
  if (head_.dim != backend_->dim()) {
    throw ContractError("head dimension " + std::to_string(head_.dim) + " does not match backend dimension " +
                        std::to_string(backend_->dim()));
  }
}

Probs SequenceClassifier::Predict(const TextInput& input) const {
  return HeadForward(backend_->Encode(input), head_);
}

LossResult SequenceClassifier::Loss(std::span<const WeightedExample> batch) const {
  LossResult out;
  for (const auto& ex : batch) {
    const double p = Predict(ex.input)[ex.target];
    if (p < kLogClamp) {
      out.loss -= ex.weight * std::log(kLogClamp);
      ++out.clamped;
    } else {
      out.loss -= ex.weight * std::log(p);
    }
  }
  return out;
}

std::size_t SequenceClassifier::num_parameters() const {
  return head_.num_parameters() + backend_->num_encoder_parameters();
}

std::vector<double> SequenceClassifier::Parameters() const {
  std::vector<double> out(num_parameters());
  std::span<double> all(out);
  head_.Flatten(all.first(head_.num_parameters()));
  backend_->GetEncoderParameters(all.subspan(head_.num_parameters()));
  return out;
}

void SequenceClassifier::SetParameters(std::span<const double> values) {
  if (values.size() != num_parameters()) throw ContractError("parameter vector size mismatch");
  head_.Assign(values.first(head_.num_parameters()));
  backend_->SetEncoderParameters(values.subspan(head_.num_parameters()));
}

LossResult SequenceClassifier::AccumulateGradient(std::span<const WeightedExample> batch,
                                                  std::span<double> grad, Rng* dropout_rng) const {
  if (grad.size() != num_parameters()) throw ContractError("gradient buffer size mismatch");
  const std::size_t n_head = head_.num_parameters();
  const bool encoder_trainable = backend_->num_encoder_parameters() > 0;

  HeadParams head_grad = HeadParams::Zeros(head_.dim);
  head_grad.Assign(grad.first(n_head));
  std::vector<double> grad_repr;
  LossResult out;
  for (const auto& ex : batch) {
    const AggregateRepr repr = backend_->Encode(ex.input);
    if (encoder_trainable) grad_repr.assign(head_.dim, 0.0);
    const LossTerm term =
        HeadLossAndGradient(repr, head_, ex.target, ex.weight, dropout_rng, head_grad, grad_repr);
    out.loss += term.loss;
    if (term.clamped) ++out.clamped;
    if (encoder_trainable && !term.clamped) {
      backend_->BackpropagateEncoder(ex.input, grad_repr, grad.subspan(n_head));
    }
  }
  head_grad.Flatten(grad.first(n_head));
  return out;
}

SequenceClassifier SequenceClassifier::Clone() const {
  return SequenceClassifier(std::shared_ptr<LmBackend>(backend_->Clone()), head_);
}

void ApplyGradient(SequenceClassifier& model, std::span<const double> grad, AdamState& state, double lr,
                   double weight_decay, const AdamConstants& constants) {
  std::vector<double> params = model.Parameters();
  AdamUpdate(params, grad, state, lr, weight_decay, constants);
  model.SetParameters(params);
}

StepResult TrainStep(SequenceClassifier& model, std::span<const WeightedExample> batch,
                     AdamState& state, double lr, double weight_decay, Rng* dropout_rng,
                     const AdamConstants& constants) {
  if (lr < 0.0) throw ContractError("learning rate must be non-negative");
  std::vector<double> grad(model.num_parameters(), 0.0);
  const LossResult loss = model.AccumulateGradient(batch, grad, dropout_rng);
  if (!std::isfinite(loss.loss)) throw NumericError("non-finite training loss");
  ApplyGradient(model, grad, state, lr, weight_decay, constants);
  StepResult out;
  out.sum_loss = loss.loss;
  out.mean_loss = batch.empty() ? 0.0 : loss.loss / static_cast<double>(batch.size());
  out.clamped = loss.clamped;
  return out;
}

}  // namespace liic
