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

// Model checkpoints and backend construction.

#ifndef LIIC_CHECKPOINT_H_
#define LIIC_CHECKPOINT_H_

#include <filesystem>
#include <memory>

#include "json.hpp"
#include "liic/harness.h"
#include "liic/mock_backend.h"

namespace liic {

// LIIC_BACKEND_URL selects the HTTP service backend; otherwise a mock
// backend is built from `mock`.
std::shared_ptr<LmBackend> MakeBackend(const MockBackend::Options& mock = {});
std::shared_ptr<LmBackend> BackendFromState(const nlohmann::json& state);

nlohmann::json PatternSetToJson(const PatternSet& set);
PatternSet PatternSetFromJson(const nlohmann::json& j);

// {"approach", "threshold", "head", "backend", "patterns"?, "metadata"}
nlohmann::json ModelToJson(const LiicModel& model, const nlohmann::json& metadata = nlohmann::json::object());
LiicModel ModelFromJson(const nlohmann::json& j);

struct LoadedCheckpoint {
  LiicModel model;
  nlohmann::json metadata;
};

// Written to a temporary file and renamed into place.
void SaveCheckpoint(const std::filesystem::path& path, const LiicModel& model,
                    const nlohmann::json& metadata = nlohmann::json::object());
LoadedCheckpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace liic

#endif  // LIIC_CHECKPOINT_H_
