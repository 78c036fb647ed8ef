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
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "encon/annotator.hpp"
#include "encon/config.hpp"
#include "encon/document.hpp"

namespace encon {

/// The identity an exact match is defined over: two annotations match when
/// all three fields are equal. Same span with a different type is a
/// different key; votes never pool across types.
struct VoteKey {
  std::string doc_id;
  TokenSpan span;
  ConceptType type = ConceptType::problem;

  friend auto operator<=>(const VoteKey&, const VoteKey&) = default;
};

inline VoteKey vote_key(const Annotation& a) {
  return VoteKey{a.doc_id, a.span, a.type};
}

/// Exact-match vote counts for one document: each key maps to the set of
/// annotators that produced it, so a count never exceeds the number of
/// input sets and an annotator contributes at most one vote per key.
class VoteTally {
 public:
  using Map = std::map<VoteKey, std::set<std::string>>;

  VoteTally() = default;
  explicit VoteTally(std::string doc_id) : doc_id_(std::move(doc_id)) {}

  const std::string& doc_id() const { return doc_id_; }
  std::size_t key_count() const { return votes_.size(); }

  int count(const VoteKey& key) const {
    auto it = votes_.find(key);
    return it == votes_.end() ? 0 : static_cast<int>(it->second.size());
  }

  const Map& votes() const { return votes_; }

  void add(const VoteKey& key, const std::string& annotator_id) {
    votes_[key].insert(annotator_id);
  }

 private:
  std::string doc_id_;
  Map votes_;
};

/// Counts exact-match votes across one document's annotator outputs.
/// All sets must share one doc id and no annotator id may appear twice.
VoteTally tally_votes(std::span<const AnnotationSet> sets);

/// Keeps exactly the keys with at least `threshold` votes. Surface text is
/// rebuilt from the document, never trusted from a contributor. Result
/// source is "ensemble".
AnnotationSet combine(const VoteTally& tally, int threshold,
                      const Document& doc);

struct AnnotatorFailure {
  std::string id;
  std::string message;
};

struct PipelineResult {
  AnnotationSet combined;
  VoteTally tally;
  std::vector<AnnotatorFailure> failures;
  int threshold = 1;
};

/// A configured annotator roster plus voting threshold. Annotators are
/// immutable once constructed; one Pipeline may annotate many documents
/// concurrently.
class Pipeline {
 public:
  Pipeline(std::vector<std::unique_ptr<Annotator>> annotators, int threshold);

  /// Instantiates every descriptor (loads lexicons and models from disk).
  static Pipeline from_config(const EnsembleConfig& config);

  std::size_t annotator_count() const { return annotators_.size(); }
  int threshold() const { return threshold_; }
  const std::vector<std::unique_ptr<Annotator>>& annotators() const {
    return annotators_;
  }

  /// Runs every annotator, tallies, and combines. A failing annotator
  /// contributes an empty set and is reported in the result; the pipeline
  /// aborts with PipelineError only when fewer annotators succeeded than
  /// the threshold needs.
  PipelineResult annotate(const Document& doc,
                          std::optional<int> threshold_override = {}) const;

 private:
  std::vector<std::unique_ptr<Annotator>> annotators_;
  int threshold_;
};

/// Spec-level entry point; same as Pipeline::annotate at the configured
/// threshold, returning only the combined set.
AnnotationSet pipeline_annotate(const Pipeline& pipeline, const Document& doc);

// Corpus-level driver. Documents are independent, so the parallel kernel
// annotates them with an OpenMP loop; the serial implementation is the
// reference the tests compare against (and the fallback without OpenMP).
std::vector<PipelineResult> annotate_corpus_serial(
    const Pipeline& pipeline, std::span<const Document> docs,
    std::optional<int> threshold_override = {});
std::vector<PipelineResult> annotate_corpus(
    const Pipeline& pipeline, std::span<const Document> docs,
    std::optional<int> threshold_override = {});

}  // namespace encon
