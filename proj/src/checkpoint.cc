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

#include "liic/checkpoint.h"

#include <fstream>

#include "liic/errors.h"
#include "liic/service_backend.h"

namespace liic {

std::shared_ptr<LmBackend> MakeBackend(const MockBackend::Options& mock) {
  if (auto url = ServiceBackend::UrlFromEnvironment()) {
    ServiceBackend::Options options;
    options.url = *url;
    options.mask_token = mock.mask_token;
    return std::make_shared<ServiceBackend>(std::move(options));
  }
  return std::make_shared<MockBackend>(mock);
}

std::shared_ptr<LmBackend> BackendFromState(const nlohmann::json& state) {
  const std::string type = state.value("type", "");
  if (type == "mock") return MockBackend::FromState(state);
  if (type == "service") return ServiceBackend::FromState(state);
  throw ConfigError("unknown backend type '" + type + "'");
}

nlohmann::json PatternSetToJson(const PatternSet& set) {
  nlohmann::json templates = nlohmann::json::array();
  for (const auto* omega : {&set.patterns, &set.antipatterns}) {
    for (const auto& p : *omega) {
      templates.push_back({{"polarity", PolarityName(p.polarity())},
                           {"origin", OriginName(p.origin())},
                           {"template", p.template_text()}});
    }
  }
  return {{"mode", ScoringModeName(set.mode)}, {"mined_on", set.mined_on}, {"templates", templates}};
}

PatternSet PatternSetFromJson(const nlohmann::json& j) {
  PatternSet set;
  set.mode = ParseScoringMode(j.at("mode").get<std::string>());
  set.mined_on = j.value("mined_on", "");
  for (const auto& t : j.at("templates")) {
    Pattern p(t.at("template").get<std::string>(), ParsePolarity(t.at("polarity").get<std::string>()),
              ParseOrigin(t.at("origin").get<std::string>()));
    (p.polarity() == Polarity::kPattern ? set.patterns : set.antipatterns).push_back(std::move(p));
  }
  return set;
}

nlohmann::json ModelToJson(const LiicModel& model, const nlohmann::json& metadata) {
  nlohmann::json j = {{"approach", ApproachName(model.approach())},
                      {"threshold", model.threshold()},
                      {"head", model.classifier().head().ToJson()},
                      {"backend", model.classifier().backend().SaveState()},
                      {"metadata", metadata}};
  if (const PatternSet* set = model.pattern_set()) j["patterns"] = PatternSetToJson(*set);
  return j;
}

LiicModel ModelFromJson(const nlohmann::json& j) {
  SequenceClassifier classifier(BackendFromState(j.at("backend")), HeadParams::FromJson(j.at("head")));
  const double threshold = j.at("threshold").get<double>();
  if (ParseApproach(j.at("approach").get<std::string>()) == Approach::kNli) {
    return LiicModel(NliModel(std::move(classifier), threshold));
  }
  return LiicModel(PatternModel(std::move(classifier), PatternSetFromJson(j.at("patterns")), threshold));
}

void SaveCheckpoint(const std::filesystem::path& path, const LiicModel& model, const nlohmann::json& metadata) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write checkpoint '" + tmp.string() + "'");
    out << ModelToJson(model, metadata).dump();
    if (!out) throw ConfigError("cannot write checkpoint '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

LoadedCheckpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open checkpoint '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("checkpoint '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return {ModelFromJson(j), j.value("metadata", nlohmann::json::object())};
}

}  // namespace liic
