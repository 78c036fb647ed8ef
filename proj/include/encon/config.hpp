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

#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "encon/external.hpp"
#include "encon/types.hpp"

namespace encon {

/// One annotator in a pipeline configuration. `kind` selects which of the
/// kind-specific fields apply: `lexicon` for gazetteer, `model` for
/// perceptron, `external` for subprocess adapters.
struct AnnotatorDescriptor {
  std::string id;
  std::string kind;
  std::filesystem::path lexicon;
  std::filesystem::path model;
  ExternalAdapterConfig external;
};

struct EnsembleConfig {
  std::vector<AnnotatorDescriptor> annotators;
  int threshold = 1;

  /// Distinct ids, known kinds, 1 <= threshold <= annotator count.
  void validate() const;
};

struct ServiceSettings {
  std::string host = "127.0.0.1";
  int port = 8756;
  std::size_t max_body_bytes = 1 << 20;
  std::chrono::milliseconds request_timeout{15000};
};

struct ToolConfig {
  EnsembleConfig ensemble;
  ServiceSettings service;
};

/// Parses the JSON configuration file. Relative lexicon/model/workdir paths
/// are resolved against the directory the config file lives in.
ToolConfig load_config_file(const std::filesystem::path& path);

/// Same, from already-read JSON text; relative paths resolve against
/// `base_dir` (current directory when empty).
ToolConfig parse_config(const std::string& json_text,
                        const std::filesystem::path& base_dir = {});

}  // namespace encon
