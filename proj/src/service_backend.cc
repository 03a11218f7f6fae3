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

#include "liic/service_backend.h"

#include <cmath>
#include <cstdlib>

#include "httplib.h"
#include "liic/errors.h"

namespace liic {

using nlohmann::json;

ServiceBackend::ServiceBackend(Options options) : options_(std::move(options)) {
  if (options_.url.empty()) throw ConfigError("service backend needs a URL");
  while (!options_.url.empty() && options_.url.back() == '/') options_.url.pop_back();
  if (options_.dim) {
    if (*options_.dim == 0) throw ConfigError("service backend dimension must be positive");
    dim_ = *options_.dim;
  }
}

std::optional<std::string> ServiceBackend::UrlFromEnvironment() {
  const char* url = std::getenv("LIIC_BACKEND_URL");
  if (url == nullptr || *url == '\0') return std::nullopt;
  return std::string(url);
}

json ServiceBackend::Post(const std::string& path, const json& body) const {
  httplib::Client client(options_.url);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  client.set_write_timeout(options_.timeout);
  auto result = client.Post(path, body.dump(), "application/json");
  if (!result) {
    throw TransportError("POST " + options_.url + path + " failed: " + httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw TransportError("POST " + options_.url + path + " returned HTTP " + std::to_string(result->status));
  }
  try {
    return json::parse(result->body);
  } catch (const json::parse_error& e) {
    throw TransportError("POST " + options_.url + path + " returned invalid JSON: " + e.what());
  }
}

std::size_t ServiceBackend::dim() const {
  std::call_once(dim_once_, [this] {
    if (dim_ != 0) return;
    const json reply = Post("/encode", {{"texts", json::array({json::array({"dimension probe"})})}});
    try {
      dim_ = reply.at("vectors").at(0).size();
    } catch (const json::exception& e) {
      throw TransportError(std::string("malformed /encode reply: ") + e.what());
    }
    if (dim_ == 0) throw TransportError("service returned an empty vector");
  });
  return dim_;
}

AggregateRepr ServiceBackend::Encode(const TextInput& input) const {
  return EncodeBatch(std::span<const TextInput>(&input, 1)).front();
}

std::vector<AggregateRepr> ServiceBackend::EncodeBatch(std::span<const TextInput> inputs) const {
  json texts = json::array();
  for (const auto& input : inputs) {
    if (input.first.empty() || (input.second && input.second->empty())) {
      throw ContractError("cannot encode an empty text");
    }
    json item = json::array({input.first});
    if (input.second) item.push_back(*input.second);
    texts.push_back(std::move(item));
  }
  const json reply = Post("/encode", {{"texts", texts}});
  std::vector<AggregateRepr> out;
  try {
    const json& vectors = reply.at("vectors");
    if (vectors.size() != inputs.size()) throw TransportError("/encode returned the wrong number of vectors");
    const std::size_t expected_dim = dim();
    for (const json& v : vectors) {
      AggregateRepr repr;
      repr.values = v.get<std::vector<double>>();
      if (repr.values.size() != expected_dim) throw TransportError("/encode returned a vector of wrong size");
      for (double x : repr.values) {
        if (!std::isfinite(x)) throw TransportError("/encode returned a non-finite value");
      }
      out.push_back(std::move(repr));
    }
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed /encode reply: ") + e.what());
  }
  return out;
}

std::vector<Completion> ServiceBackend::TopK(const MaskQuery& q) const {
  ValidateMaskQuery(q, options_.mask_token);
  const json reply = Post("/topk", {{"text", q.text}, {"mask_token", options_.mask_token}, {"k", q.k}});
  std::vector<Completion> out;
  try {
    const auto tokens = reply.at("tokens").get<std::vector<std::string>>();
    const auto probs = reply.at("probs").get<std::vector<double>>();
    if (tokens.size() != probs.size()) throw TransportError("/topk tokens and probs differ in length");
    for (std::size_t i = 0; i < tokens.size() && i < q.k; ++i) out.push_back({tokens[i], probs[i]});
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed /topk reply: ") + e.what());
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Completion& a, const Completion& b) { return a.probability > b.probability; });
  return out;
}

std::unique_ptr<LmBackend> ServiceBackend::Clone() const {
  Options options = options_;
  if (dim_ != 0) options.dim = dim_;
  return std::make_unique<ServiceBackend>(std::move(options));
}

json ServiceBackend::SaveState() const {
  return {{"type", "service"}, {"url", options_.url}, {"dim", dim()}, {"mask_token", options_.mask_token}};
}

std::unique_ptr<ServiceBackend> ServiceBackend::FromState(const json& state) {
  if (state.value("type", "") != "service") throw ConfigError("backend state is not a service backend");
  Options options;
  options.url = state.at("url").get<std::string>();
  if (auto env = UrlFromEnvironment()) options.url = *env;
  options.dim = state.at("dim").get<std::size_t>();
  options.mask_token = state.at("mask_token").get<std::string>();
  return std::make_unique<ServiceBackend>(std::move(options));
}

}  // namespace liic
