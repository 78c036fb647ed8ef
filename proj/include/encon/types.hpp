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

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace encon {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grammar violation in an input text format (.con files, lexicons,
/// configuration). Carries a 1-based line number when one applies.
struct ParseError : Error {
  ParseError(const std::string& msg, int line_no = 0)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg
                          : msg),
        line(line_no) {}
  int line;
};

/// A value violates a documented invariant (span out of range, document
/// mismatch, duplicate ids, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// Bad pipeline or service configuration (threshold out of range, unknown
/// annotator kind, ...).
struct ConfigError : Error {
  using Error::Error;
};

/// Gold annotations that BIO tagging cannot represent.
struct EncodingError : Error {
  using Error::Error;
};

struct TrainError : Error {
  using Error::Error;
};

/// Model file with bad magic, unsupported version, or truncated payload.
struct ModelFormatError : Error {
  using Error::Error;
};

/// External annotator subprocess failed. Carries the child's stderr.
struct AdapterError : Error {
  AdapterError(const std::string& msg, std::string stderr_text = {})
      : Error(msg), child_stderr(std::move(stderr_text)) {}
  std::string child_stderr;
};

struct AdapterTimeout : AdapterError {
  using AdapterError::AdapterError;
};

/// Too few annotators succeeded for the vote to be interpretable.
struct PipelineError : Error {
  PipelineError(const std::string& msg, std::vector<std::string> ids = {})
      : Error(msg), failed_ids(std::move(ids)) {}
  std::vector<std::string> failed_ids;
};

// ---------------------------------------------------------------------------
// ConceptType
// ---------------------------------------------------------------------------

/// The closed set of concept classes. Nothing else is accepted anywhere.
enum class ConceptType : std::uint8_t { problem = 0, test = 1, treatment = 2 };

inline constexpr std::array<ConceptType, 3> kConceptTypes = {
    ConceptType::problem, ConceptType::test, ConceptType::treatment};

constexpr const char* to_string(ConceptType t) {
  switch (t) {
    case ConceptType::problem:
      return "problem";
    case ConceptType::test:
      return "test";
    case ConceptType::treatment:
      return "treatment";
  }
  return "?";
}

std::optional<ConceptType> concept_type_from(std::string_view s);

// ---------------------------------------------------------------------------
// TokenSpan
// ---------------------------------------------------------------------------

/// Inclusive token-coordinate span. Lines are 1-based, token indices 0-based
/// within their line. Ordering is lexicographic over
/// (start_line, start_token, end_line, end_token), which is also the
/// serialization order of .con files.
struct TokenSpan {
  int start_line = 1;
  int start_token = 0;
  int end_line = 1;
  int end_token = 0;

  friend auto operator<=>(const TokenSpan&, const TokenSpan&) = default;

  std::pair<int, int> start() const { return {start_line, start_token}; }
  std::pair<int, int> end() const { return {end_line, end_token}; }

  /// Endpoints in order; says nothing about any particular document.
  bool wellformed() const { return start() <= end(); }

  /// True when the two spans cover at least one common token position.
  bool overlaps(const TokenSpan& other) const {
    return start() <= other.end() && other.start() <= end();
  }

  std::string to_string() const {
    return std::to_string(start_line) + ":" + std::to_string(start_token) +
           " " + std::to_string(end_line) + ":" + std::to_string(end_token);
  }
};

}  // namespace encon
