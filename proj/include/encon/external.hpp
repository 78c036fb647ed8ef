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

#include "encon/annotator.hpp"

namespace encon {

/// How to wrap a tagger that lives outside this process. The protocol over
/// standard streams: raw record text on the child's stdin, concept-grammar
/// lines on its stdout, diagnostics on stderr, exit 0 on success.
struct ExternalAdapterConfig {
  std::vector<std::string> command;
  std::chrono::milliseconds timeout{10000};
  std::filesystem::path workdir;  // empty: inherit the parent's directory
};

/// Runs one subprocess for one document. Nonzero exit raises AdapterError
/// carrying the child's stderr; a blown deadline kills the child and raises
/// AdapterTimeout; malformed output propagates as a parse error tagged with
/// the source id.
AnnotationSet external_annotate(const ExternalAdapterConfig& config,
                                const Document& doc, const std::string& source);

class ExternalAnnotator : public Annotator {
 public:
  ExternalAnnotator(std::string id, ExternalAdapterConfig config);

  const std::string& id() const override { return id_; }
  std::string kind() const override { return "external"; }
  AnnotationSet annotate(const Document& doc) const override {
    return external_annotate(config_, doc, id_);
  }

  const ExternalAdapterConfig& config() const { return config_; }

 private:
  std::string id_;
  ExternalAdapterConfig config_;
};

}  // namespace encon
