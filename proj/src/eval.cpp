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

#include "encon/eval.hpp"

#include <algorithm>
#include <set>

namespace encon {

void Metrics::finalize() {
  precision = (tp + fp == 0) ? 1.0
                             : static_cast<double>(tp) /
                                   static_cast<double>(tp + fp);
  recall = (tp + fn == 0) ? 1.0
                          : static_cast<double>(tp) /
                                static_cast<double>(tp + fn);
  f1 = (precision + recall == 0.0)
           ? 0.0
           : 2.0 * precision * recall / (precision + recall);
}

namespace {

std::set<VoteKey> key_set(const std::vector<Annotation>& annotations) {
  std::set<VoteKey> keys;
  for (const Annotation& a : annotations) keys.insert(vote_key(a));
  return keys;
}

}  // namespace

EvalReport score_exact(const std::vector<Annotation>& gold,
                       const std::vector<Annotation>& system) {
  std::set<VoteKey> gold_keys = key_set(gold);
  std::set<VoteKey> system_keys = key_set(system);

  EvalReport report;
  for (const VoteKey& key : system_keys) {
    auto& m = report.per_type[static_cast<std::size_t>(key.type)];
    if (gold_keys.count(key))
      ++m.tp;
    else
      ++m.fp;
  }
  for (const VoteKey& key : gold_keys)
    if (!system_keys.count(key))
      ++report.per_type[static_cast<std::size_t>(key.type)].fn;

  for (Metrics& m : report.per_type) {
    report.overall.tp += m.tp;
    report.overall.fp += m.fp;
    report.overall.fn += m.fn;
    m.finalize();
  }
  report.overall.finalize();
  return report;
}

ErrorBreakdown categorize_errors(const std::vector<Annotation>& gold,
                                 const std::vector<Annotation>& system) {
  std::set<VoteKey> gold_keys = key_set(gold);
  std::set<VoteKey> system_keys = key_set(system);

  // Unique annotations per document, for overlap scans.
  std::map<std::string, std::vector<VoteKey>> gold_by_doc, system_by_doc;
  for (const VoteKey& k : gold_keys) gold_by_doc[k.doc_id].push_back(k);
  for (const VoteKey& k : system_keys) system_by_doc[k.doc_id].push_back(k);

  ErrorBreakdown breakdown;
  for (const VoteKey& sys : system_keys) {
    if (gold_keys.count(sys)) continue;  // true positive

    auto it = gold_by_doc.find(sys.doc_id);
    bool same_span_other_type = false;
    bool one_endpoint = false;
    bool overlap_no_endpoint = false;
    if (it != gold_by_doc.end()) {
      for (const VoteKey& g : it->second) {
        if (g.span == sys.span && g.type != sys.type) same_span_other_type = true;
        if (!g.span.overlaps(sys.span)) continue;
        bool start_eq = g.span.start() == sys.span.start();
        bool end_eq = g.span.end() == sys.span.end();
        if (start_eq != end_eq) one_endpoint = true;
        if (!start_eq && !end_eq) overlap_no_endpoint = true;
      }
    }
    if (same_span_other_type)
      ++breakdown.wrong_type_only;
    else if (one_endpoint)
      ++breakdown.one_boundary_wrong;
    else if (overlap_no_endpoint)
      ++breakdown.both_boundaries_wrong;
    else
      ++breakdown.spurious;
  }

  for (const VoteKey& g : gold_keys) {
    if (system_keys.count(g)) continue;  // matched
    bool touched = false;
    auto it = system_by_doc.find(g.doc_id);
    if (it != system_by_doc.end())
      for (const VoteKey& s : it->second)
        if (s.span.overlaps(g.span)) {
          touched = true;
          break;
        }
    if (!touched) ++breakdown.missed;
  }
  return breakdown;
}

namespace {

struct Counts {
  long tp = 0, fp = 0, fn = 0;
};

// Per-document exact-match counts of one combined set against gold.
Counts doc_counts(const AnnotationSet& combined, const AnnotationSet& gold) {
  Counts c;
  for (const auto& [key, a] : combined) {
    if (gold.contains(a.span, a.type))
      ++c.tp;
    else
      ++c.fp;
  }
  c.fn = static_cast<long>(gold.size()) - c.tp;
  return c;
}

std::vector<int> checked_thresholds(std::vector<int> thresholds,
                                    std::size_t annotator_count) {
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  for (int t : thresholds)
    if (t < 1 || t > static_cast<int>(annotator_count))
      throw ConfigError("sweep threshold " + std::to_string(t) +
                        " outside [1, " + std::to_string(annotator_count) +
                        "]");
  return thresholds;
}

std::vector<SweepRow> rows_from_counts(const std::vector<int>& thresholds,
                                       const std::vector<Counts>& totals) {
  std::vector<SweepRow> rows;
  rows.reserve(thresholds.size());
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    Metrics m;
    m.tp = totals[i].tp;
    m.fp = totals[i].fp;
    m.fn = totals[i].fn;
    m.finalize();
    rows.push_back({thresholds[i], m.precision, m.recall, m.f1});
  }
  return rows;
}

// All per-threshold counts for one document: tally once, combine per
// threshold.
std::vector<Counts> sweep_one_doc(const Document& doc,
                                  const AnnotationSet& gold,
                                  const AnnotatorOutputs& outputs,
                                  const std::vector<int>& thresholds) {
  std::vector<AnnotationSet> sets;
  sets.reserve(outputs.size());
  for (const auto& [annotator_id, per_doc] : outputs) {
    auto it = per_doc.find(doc.id());
    if (it != per_doc.end())
      sets.push_back(it->second);
    else
      sets.emplace_back(doc.id(), annotator_id);
  }
  VoteTally tally = tally_votes(sets);

  std::vector<Counts> counts;
  counts.reserve(thresholds.size());
  for (int threshold : thresholds)
    counts.push_back(doc_counts(combine(tally, threshold, doc), gold));
  return counts;
}

}  // namespace

std::vector<SweepRow> sweep_serial(const GoldCorpus& gold,
                                   const AnnotatorOutputs& outputs,
                                   std::vector<int> thresholds) {
  thresholds = checked_thresholds(std::move(thresholds), outputs.size());
  std::vector<Counts> totals(thresholds.size());
  for (const Document& doc : gold.documents()) {
    auto counts = sweep_one_doc(doc, gold.gold(doc.id()), outputs, thresholds);
    for (std::size_t i = 0; i < totals.size(); ++i) {
      totals[i].tp += counts[i].tp;
      totals[i].fp += counts[i].fp;
      totals[i].fn += counts[i].fn;
    }
  }
  return rows_from_counts(thresholds, totals);
}

std::vector<SweepRow> sweep(const GoldCorpus& gold,
                            const AnnotatorOutputs& outputs,
                            std::vector<int> thresholds) {
#ifdef _OPENMP
  thresholds = checked_thresholds(std::move(thresholds), outputs.size());
  const auto& docs = gold.documents();
  std::vector<std::vector<Counts>> per_doc(docs.size());
  std::vector<std::exception_ptr> errors(docs.size());
  #pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(docs.size()); ++i) {
    auto idx = static_cast<std::size_t>(i);
    try {
      per_doc[idx] = sweep_one_doc(docs[idx], gold.gold(docs[idx].id()),
                                   outputs, thresholds);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<Counts> totals(thresholds.size());
  for (const auto& counts : per_doc)
    for (std::size_t i = 0; i < totals.size(); ++i) {
      totals[i].tp += counts[i].tp;
      totals[i].fp += counts[i].fp;
      totals[i].fn += counts[i].fn;
    }
  return rows_from_counts(thresholds, totals);
#else
  return sweep_serial(gold, outputs, std::move(thresholds));
#endif
}

}  // namespace encon
