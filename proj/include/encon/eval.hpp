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
#include <map>
#include <string>
#include <vector>

#include "encon/annotation.hpp"
#include "encon/corpus.hpp"
#include "encon/ensemble.hpp"

namespace encon {

/// Exact-match counts with the standard scorer conventions: a precision or
/// recall whose denominator is zero is 1.0, and F1 is 0.0 when P + R = 0.
struct Metrics {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 0.0;

  void finalize();
};

/// Micro-averaged scores, overall and per concept type. Matching partitions
/// by type, so per-type tp (and fn) sum to the overall numbers; fp
/// partitions by the system annotation's type.
struct EvalReport {
  Metrics overall;
  std::array<Metrics, 3> per_type;  // indexed by ConceptType

  const Metrics& for_type(ConceptType t) const {
    return per_type[static_cast<std::size_t>(t)];
  }
};

/// Where the false positives went wrong. Every FP lands in exactly one of
/// the first four buckets, so they always sum to fp; `missed` counts the
/// false negatives no system annotation even touches.
struct ErrorBreakdown {
  long wrong_type_only = 0;
  long one_boundary_wrong = 0;
  long both_boundaries_wrong = 0;
  long spurious = 0;
  long missed = 0;
};

struct SweepRow {
  int threshold = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Exact-match scoring under VoteKey equality (doc, span, type). Duplicate
/// keys within one side count once.
EvalReport score_exact(const std::vector<Annotation>& gold,
                       const std::vector<Annotation>& system);

/// Assigns each false positive its first matching category, in priority
/// order: wrong type on an identical span; a token-overlapping gold sharing
/// exactly one endpoint; a token-overlapping gold sharing neither endpoint;
/// spurious (no overlap at all).
ErrorBreakdown categorize_errors(const std::vector<Annotation>& gold,
                                 const std::vector<Annotation>& system);

/// Per-annotator outputs keyed by doc id; documents an annotator skipped
/// count as empty sets.
using PerDocSets = std::map<std::string, AnnotationSet>;
using AnnotatorOutputs = std::vector<std::pair<std::string, PerDocSets>>;

/// Combines at every threshold across all documents and scores against the
/// corpus gold; one row per threshold, ascending. Thresholds must lie in
/// [1, number of annotators]. The plain version runs the per-document
/// tallies in an OpenMP loop; the serial one is the reference.
std::vector<SweepRow> sweep(const GoldCorpus& gold,
                            const AnnotatorOutputs& outputs,
                            std::vector<int> thresholds);
std::vector<SweepRow> sweep_serial(const GoldCorpus& gold,
                                   const AnnotatorOutputs& outputs,
                                   std::vector<int> thresholds);

enum class ReportFormat { tsv, json };

/// Deterministic reports, numbers with 4 decimals. TSV blocks: overall
/// precision/recall/f1, per-type counts, error categories (when given),
/// sweep rows (when any). JSON mirrors the same data under fixed keys.
std::string render_report(const EvalReport& report,
                          const ErrorBreakdown* breakdown,
                          const std::vector<SweepRow>& rows,
                          ReportFormat format);

/// Just the sweep table (TSV header threshold/precision/recall/f1, or a
/// JSON array of rows).
std::string render_sweep(const std::vector<SweepRow>& rows,
                         ReportFormat format);

}  // namespace encon
