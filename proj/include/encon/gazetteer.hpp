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

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "encon/annotator.hpp"
#include "encon/types.hpp"

namespace encon {

/// Term dictionary for the lookup annotator. Keys are normalized
/// (lowercased, single-spaced) token sequences; each term carries exactly
/// one concept type.
class GazetteerLexicon {
 public:
  GazetteerLexicon() = default;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t max_term_tokens() const { return max_tokens_; }

  const ConceptType* lookup(const std::string& normalized_term) const {
    auto it = entries_.find(normalized_term);
    return it == entries_.end() ? nullptr : &it->second;
  }

  /// Normalizes the term and inserts it. A duplicate with the same type
  /// collapses silently; a conflicting type is a ValidationError. Empty
  /// terms are rejected.
  void add(std::string_view term, ConceptType type);

  const std::map<std::string, ConceptType>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, ConceptType> entries_;
  std::size_t max_tokens_ = 0;
};

/// Parses lexicon text: one `term<TAB>type` per line, UTF-8, '#' comment
/// lines and blank lines ignored. Unknown types and term/type conflicts
/// abort with the offending line number.
GazetteerLexicon load_lexicon(std::string_view entries_text);

/// Greedy longest-match dictionary annotator. At each token position the
/// longest lexicon entry matching the normalized token sequence starting
/// there is emitted and the cursor jumps past it; without a match the cursor
/// advances one token. Matches never cross line boundaries, so output spans
/// never overlap.
class GazetteerAnnotator : public Annotator {
 public:
  GazetteerAnnotator(std::string id, GazetteerLexicon lexicon)
      : id_(std::move(id)), lexicon_(std::move(lexicon)) {}

  const std::string& id() const override { return id_; }
  std::string kind() const override { return "gazetteer"; }
  AnnotationSet annotate(const Document& doc) const override;

  const GazetteerLexicon& lexicon() const { return lexicon_; }

 private:
  std::string id_;
  GazetteerLexicon lexicon_;
};

}  // namespace encon
