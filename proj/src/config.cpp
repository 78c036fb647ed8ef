// Copyright 2026 The encon Authors
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

#include "encon/config.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "encon/corpus.hpp"

namespace encon {

void EnsembleConfig::validate() const {
  if (annotators.empty())
    throw ConfigError("ensemble needs at least one annotator");
  std::set<std::string> ids;
  for (const AnnotatorDescriptor& d : annotators) {
    if (d.id.empty()) throw ConfigError("annotator with empty id");
    if (!ids.insert(d.id).second)
      throw ConfigError("duplicate annotator id '" + d.id + "'");
    if (d.kind != "gazetteer" && d.kind != "perceptron" && d.kind != "external")
      throw ConfigError("annotator '" + d.id + "': unknown kind '" + d.kind +
                        "'");
  }
  if (threshold < 1 || threshold > static_cast<int>(annotators.size()))
    throw ConfigError("threshold " + std::to_string(threshold) +
                      " outside [1, " + std::to_string(annotators.size()) +
                      "]");
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& p) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

}  // namespace

ToolConfig parse_config(const std::string& json_text,
                        const std::filesystem::path& base_dir) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  ToolConfig config;
  try {
    if (!root.contains("annotators") || !root["annotators"].is_array())
      throw ConfigError("config needs an \"annotators\" array");
    for (const auto& item : root["annotators"]) {
      AnnotatorDescriptor d;
      d.id = item.at("id").get<std::string>();
      d.kind = item.at("kind").get<std::string>();
      if (d.kind == "gazetteer") {
        d.lexicon = resolve(base_dir,
                            item.at("lexicon").get<std::string>());
      } else if (d.kind == "perceptron") {
        d.model = resolve(base_dir, item.at("model").get<std::string>());
      } else if (d.kind == "external") {
        for (const auto& arg : item.at("command"))
          d.external.command.push_back(arg.get<std::string>());
        if (item.contains("timeout_ms"))
          d.external.timeout =
              std::chrono::milliseconds(item["timeout_ms"].get<long>());
        if (item.contains("workdir"))
          d.external.workdir =
              resolve(base_dir, item["workdir"].get<std::string>());
      }
      config.ensemble.annotators.push_back(std::move(d));
    }
    config.ensemble.threshold = root.value("threshold", 1);

    if (root.contains("service")) {
      const auto& s = root["service"];
      config.service.host = s.value("host", config.service.host);
      config.service.port = s.value("port", config.service.port);
      if (s.contains("max_body_bytes"))
        config.service.max_body_bytes = s["max_body_bytes"].get<std::size_t>();
      if (s.contains("request_timeout_ms"))
        config.service.request_timeout =
            std::chrono::milliseconds(s["request_timeout_ms"].get<long>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }

  config.ensemble.validate();
  if (config.service.max_body_bytes == 0)
    throw ConfigError("service max_body_bytes must be positive");
  if (config.service.request_timeout.count() <= 0)
    throw ConfigError("service request_timeout_ms must be positive");
  return config;
}

ToolConfig load_config_file(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

}  // namespace encon
