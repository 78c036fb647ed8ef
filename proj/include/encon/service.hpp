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

#include <memory>
#include <string>

#include "encon/config.hpp"
#include "encon/ensemble.hpp"

namespace encon {

/// JSON body of a successful annotation request; also what the CLI emits
/// with --format json. Contains the combined annotations plus the per-key
/// vote counts and contributor ids behind them.
std::string annotate_response_json(const PipelineResult& result,
                                   const Document& doc);

/// HTTP front end over one Pipeline.
///
///   POST /annotate?threshold=<int>&format=json|con&doc_id=<id>
///        plain-text record body -> annotations as JSON or concept lines
///   GET  /annotators  -> configured annotator ids and kinds
///   GET  /health      -> "ok"
///
/// Errors come back as JSON {"error": code, "message": text} with status
/// 400 (bad parameter), 413 (body over the configured limit) or 500
/// (pipeline failure). The service is stateless: a response depends only on
/// the request and the loaded configuration.
class AnnotationService {
 public:
  AnnotationService(ServiceSettings settings, Pipeline pipeline);
  ~AnnotationService();

  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  /// Binds the configured host/port and serves until stop(). Blocks.
  void run();

  /// Test hook: binds an ephemeral port on the configured host and serves
  /// it from a background thread. Returns the bound port once the listener
  /// is accepting connections.
  int start_background();
  void stop();

  const Pipeline& pipeline() const { return pipeline_; }
  const ServiceSettings& settings() const { return settings_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  ServiceSettings settings_;
  Pipeline pipeline_;
};

}  // namespace encon
