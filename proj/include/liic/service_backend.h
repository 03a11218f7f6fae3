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

// Adapter for a remote masked-LM / sentence-encoder server.
//
// Wire protocol (JSON over HTTP):
//   POST /encode {"texts": [[str] | [str, str], ...]}   -> {"vectors": [[float], ...]}
//   POST /topk   {"text": str, "mask_token": str, "k": int} -> {"tokens": [str], "probs": [float]}
//
// The served vectors are frozen; only the local head is trained.

#ifndef LIIC_SERVICE_BACKEND_H_
#define LIIC_SERVICE_BACKEND_H_

#include <chrono>
#include <cstddef>
#include <mutex>
#include <optional>
#include <string>

#include "liic/lmbackend.h"

namespace liic {

class ServiceBackend : public LmBackend {
 public:
  struct Options {
    std::string url;  // e.g. "http://localhost:8080"
    std::optional<std::size_t> dim;  // probed with one /encode call when unset
    std::string mask_token = "<mask>";
    std::chrono::seconds timeout{30};
  };

  explicit ServiceBackend(Options options);

  // Reads LIIC_BACKEND_URL; nullopt when unset or empty.
  static std::optional<std::string> UrlFromEnvironment();

  std::string id() const override { return "service:" + options_.url; }
  std::size_t dim() const override;
  std::string_view mask_token() const override { return options_.mask_token; }

  AggregateRepr Encode(const TextInput& input) const override;
  std::vector<AggregateRepr> EncodeBatch(std::span<const TextInput> inputs) const override;
  std::vector<Completion> TopK(const MaskQuery& q) const override;

  std::unique_ptr<LmBackend> Clone() const override;
  nlohmann::json SaveState() const override;
  static std::unique_ptr<ServiceBackend> FromState(const nlohmann::json& state);

 private:
  nlohmann::json Post(const std::string& path, const nlohmann::json& body) const;

  Options options_;
  mutable std::once_flag dim_once_;
  mutable std::size_t dim_ = 0;
};

}  // namespace liic

#endif  // LIIC_SERVICE_BACKEND_H_
