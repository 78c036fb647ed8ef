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

#include "encon/annotation.hpp"
#include "encon/document.hpp"

namespace encon {

/// The uniform contract every annotator kind satisfies: map a document to a
/// deduplicated AnnotationSet whose source is the annotator id and whose
/// spans are all valid for the document. Implementations must be immutable
/// once constructed so one instance can annotate documents concurrently.
class Annotator {
 public:
  virtual ~Annotator() = default;

  virtual const std::string& id() const = 0;
  virtual std::string kind() const = 0;
  virtual AnnotationSet annotate(const Document& doc) const = 0;
};

}  // namespace encon
