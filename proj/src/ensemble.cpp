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

#include "encon/ensemble.hpp"

#include <exception>

#include "encon/con_format.hpp"
#include "encon/corpus.hpp"
#include "encon/gazetteer.hpp"
#include "encon/perceptron.hpp"

namespace encon {

VoteTally tally_votes(std::span<const AnnotationSet> sets) {
  if (sets.empty()) return VoteTally();

  VoteTally tally(sets.front().doc_id());
  std::set<std::string> seen_sources;
  for (const AnnotationSet& set : sets) {
    if (set.doc_id() != tally.doc_id())
      throw ValidationError("tally over mixed documents: '" + tally.doc_id() +
                            "' vs '" + set.doc_id() + "'");
    if (!seen_sources.insert(set.source()).second)
      throw ValidationError("two annotation sets from annotator '" +
                            set.source() + "'");
    for (const auto& [key, a] : set) tally.add(vote_key(a), set.source());
  }
  return tally;
}

AnnotationSet combine(const VoteTally& tally, int threshold,
                      const Document& doc) {
  if (threshold < 1)
    throw ConfigError("voting threshold must be >= 1, got " +
                      std::to_string(threshold));
  if (tally.key_count() > 0 && tally.doc_id() != doc.id())
    throw ValidationError("tally for '" + tally.doc_id() +
                          "' combined against document '" + doc.id() + "'");

  AnnotationSet out(doc.id(), "ensemble");
  for (const auto& [key, contributors] : tally.votes())
    if (static_cast<int>(contributors.size()) >= threshold)
      out.insert(make_annotation(doc, key.span, key.type, "ensemble"));
  return out;
}

Pipeline::Pipeline(std::vector<std::unique_ptr<Annotator>> annotators,
                   int threshold)
    : annotators_(std::move(annotators)), threshold_(threshold) {
  if (annotators_.empty())
    throw ConfigError("pipeline needs at least one annotator");
  std::set<std::string> ids;
  for (const auto& a : annotators_)
    if (!ids.insert(a->id()).second)
      throw ConfigError("duplicate annotator id '" + a->id() + "'");
  if (threshold_ < 1 || threshold_ > static_cast<int>(annotators_.size()))
    throw ConfigError("threshold " + std::to_string(threshold_) +
                      " outside [1, " + std::to_string(annotators_.size()) +
                      "]");
}

Pipeline Pipeline::from_config(const EnsembleConfig& config) {
  config.validate();
  std::vector<std::unique_ptr<Annotator>> annotators;
  for (const AnnotatorDescriptor& d : config.annotators) {
    if (d.kind == "gazetteer") {
      annotators.push_back(std::make_unique<GazetteerAnnotator>(
          d.id, load_lexicon(read_file(d.lexicon))));
    } else if (d.kind == "perceptron") {
      std::string raw = read_file(d.model);
      std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
      annotators.push_back(std::make_unique<PerceptronAnnotator>(
          d.id, PerceptronModel::load(bytes)));
    } else {
      annotators.push_back(
          std::make_unique<ExternalAnnotator>(d.id, d.external));
    }
  }
  return Pipeline(std::move(annotators), config.threshold);
}

PipelineResult Pipeline::annotate(const Document& doc,
                                  std::optional<int> threshold_override) const {
  int threshold = threshold_override.value_or(threshold_);
  if (threshold < 1 || threshold > static_cast<int>(annotators_.size()))
    throw ConfigError("threshold " + std::to_string(threshold) +
                      " outside [1, " + std::to_string(annotators_.size()) +
                      "]");

  PipelineResult result;
  result.threshold = threshold;

  std::vector<AnnotationSet> sets;
  sets.reserve(annotators_.size());
  for (const auto& annotator : annotators_) {
    try {
      sets.push_back(annotator->annotate(doc));
    } catch (const Error& e) {
      result.failures.push_back({annotator->id(), e.what()});
      sets.emplace_back(doc.id(), annotator->id());
    }
  }

  int succeeded = static_cast<int>(annotators_.size()) -
                  static_cast<int>(result.failures.size());
  if (succeeded < threshold) {
    std::string ids;
    for (const AnnotatorFailure& f : result.failures) {
      if (!ids.empty()) ids += ", ";
      ids += f.id;
    }
    std::vector<std::string> failed;
    for (const AnnotatorFailure& f : result.failures) failed.push_back(f.id);
    throw PipelineError("only " + std::to_string(succeeded) +
                            " annotators succeeded, need " +
                            std::to_string(threshold) + " (failed: " + ids +
                            ")",
                        std::move(failed));
  }

  result.tally = tally_votes(sets);
  result.combined = combine(result.tally, threshold, doc);
  return result;
}

AnnotationSet pipeline_annotate(const Pipeline& pipeline,
                                const Document& doc) {
  return pipeline.annotate(doc).combined;
}

std::vector<PipelineResult> annotate_corpus_serial(
    const Pipeline& pipeline, std::span<const Document> docs,
    std::optional<int> threshold_override) {
  std::vector<PipelineResult> results;
  results.reserve(docs.size());
  for (const Document& doc : docs)
    results.push_back(pipeline.annotate(doc, threshold_override));
  return results;
}

std::vector<PipelineResult> annotate_corpus(
    const Pipeline& pipeline, std::span<const Document> docs,
    std::optional<int> threshold_override) {
#ifdef _OPENMP
  std::vector<PipelineResult> results(docs.size());
  std::vector<std::exception_ptr> errors(docs.size());
  // Exceptions may not cross the parallel region; park them per slot.
  #pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(docs.size()); ++i) {
    try {
      results[static_cast<std::size_t>(i)] =
          pipeline.annotate(docs[static_cast<std::size_t>(i)],
                            threshold_override);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
#else
  return annotate_corpus_serial(pipeline, docs, threshold_override);
#endif
}

}  // namespace encon
