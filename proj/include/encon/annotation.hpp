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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "encon/document.hpp"
#include "encon/types.hpp"

namespace encon {

/// One concept mention. `text` is the covered surface form, lowercased and
/// single-space-joined; spans and type are what voting and scoring compare,
/// the text field is never used for matching.
struct Annotation {
  std::string doc_id;
  TokenSpan span;
  ConceptType type = ConceptType::problem;
  std::string text;
  std::string source;

  std::pair<TokenSpan, ConceptType> key() const { return {span, type}; }
};

/// Builds an Annotation whose text is derived from the document, so the
/// surface-form invariant holds by construction.
Annotation make_annotation(const Document& doc, const TokenSpan& span,
                           ConceptType type, std::string source);

/// Everything one annotator said about one document. At most one annotation
/// per (span, type) key: one vote per annotator per key. Iteration order is
/// span order, then type, and is therefore deterministic.
class AnnotationSet {
 public:
  using Key = std::pair<TokenSpan, ConceptType>;
  using Map = std::map<Key, Annotation>;
  using const_iterator = Map::const_iterator;

  AnnotationSet() = default;
  AnnotationSet(std::string doc_id, std::string source)
      : doc_id_(std::move(doc_id)), source_(std::move(source)) {}

  const std::string& doc_id() const { return doc_id_; }
  const std::string& source() const { return source_; }

  /// Duplicate keys collapse silently (first one wins).
  /// Returns false when the key was already present.
  bool insert(Annotation a) {
    auto [it, fresh] = items_.try_emplace(a.key(), std::move(a));
    (void)it;
    return fresh;
  }

  bool contains(const TokenSpan& span, ConceptType type) const {
    return items_.count({span, type}) > 0;
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }

  std::vector<Annotation> to_vector() const {
    std::vector<Annotation> out;
    out.reserve(items_.size());
    for (const auto& [key, a] : items_) out.push_back(a);
    return out;
  }

  // Set equality is key equality: two sets agree when they contain the same
  // (span, type) pairs, regardless of text casing or source.
  friend bool operator==(const AnnotationSet& a, const AnnotationSet& b) {
    if (a.items_.size() != b.items_.size()) return false;
    auto it = b.items_.begin();
    for (const auto& [key, ann] : a.items_) {
      if (it->first != key) return false;
      ++it;
    }
    return true;
  }

 private:
  std::string doc_id_;
  std::string source_;
  Map items_;
};

}  // namespace encon
