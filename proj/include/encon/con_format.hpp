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

#include <string>
#include <string_view>

#include "encon/annotation.hpp"
#include "encon/document.hpp"

namespace encon {

// Concept annotation files: one annotation per line in the grammar
//
//   c="<text>" <sl>:<st> <el>:<et>||t="<type>"
//
// where sl/el are 1-based line numbers, st/et 0-based token indices, both
// endpoints inclusive, and type is problem, test or treatment.

/// Strict parse: the first malformed line, unknown type, or out-of-document
/// span aborts with the offending line number. Blank lines are skipped and
/// duplicate (span, type) lines collapse to one. The text field of each line
/// is accepted in any case and then rebuilt from the document; spans are
/// authoritative.
AnnotationSet parse_con(std::string_view con_text, const Document& doc,
                        std::string source);

/// Canonical serialization: one line per annotation ordered by
/// (start_line, start_token, end_line, end_token, type), concept text
/// lowercased, trailing newline after the last line, empty set gives "".
/// Throws ValidationError when an annotation does not belong to the document.
std::string serialize_con(const AnnotationSet& annotations,
                          const Document& doc);

/// Single-line form of one annotation, without trailing newline.
std::string con_line(const Annotation& a, const Document& doc);

}  // namespace encon
