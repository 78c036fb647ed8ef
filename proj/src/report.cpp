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

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "encon/eval.hpp"

namespace encon {

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

double round4(double v) { return std::round(v * 10000.0) / 10000.0; }

void append_metrics_row(std::string& out, const std::string& label,
                        const Metrics& m) {
  out += label + "\t" + std::to_string(m.tp) + "\t" + std::to_string(m.fp) +
         "\t" + std::to_string(m.fn) + "\t" + fixed4(m.precision) + "\t" +
         fixed4(m.recall) + "\t" + fixed4(m.f1) + "\n";
}

nlohmann::ordered_json metrics_json(const Metrics& m) {
  return {{"tp", m.tp},
          {"fp", m.fp},
          {"fn", m.fn},
          {"precision", round4(m.precision)},
          {"recall", round4(m.recall)},
          {"f1", round4(m.f1)}};
}

nlohmann::ordered_json sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepRow& row : rows)
    arr.push_back({{"threshold", row.threshold},
                   {"precision", round4(row.precision)},
                   {"recall", round4(row.recall)},
                   {"f1", round4(row.f1)}});
  return arr;
}

std::string sweep_tsv(const std::vector<SweepRow>& rows) {
  std::string out = "threshold\tprecision\trecall\tf1\n";
  for (const SweepRow& row : rows)
    out += std::to_string(row.threshold) + "\t" + fixed4(row.precision) +
           "\t" + fixed4(row.recall) + "\t" + fixed4(row.f1) + "\n";
  return out;
}

}  // namespace

std::string render_report(const EvalReport& report,
                          const ErrorBreakdown* breakdown,
                          const std::vector<SweepRow>& rows,
                          ReportFormat format) {
  if (format == ReportFormat::json) {
    nlohmann::ordered_json root;
    root["overall"] = metrics_json(report.overall);
    nlohmann::ordered_json per_type;
    for (ConceptType t : kConceptTypes)
      per_type[to_string(t)] = metrics_json(report.for_type(t));
    root["per_type"] = std::move(per_type);
    if (breakdown) {
      root["errors"] = {{"wrong_type_only", breakdown->wrong_type_only},
                        {"one_boundary_wrong", breakdown->one_boundary_wrong},
                        {"both_boundaries_wrong",
                         breakdown->both_boundaries_wrong},
                        {"spurious", breakdown->spurious},
                        {"missed", breakdown->missed}};
    } else {
      root["errors"] = nullptr;
    }
    root["sweep"] = sweep_json(rows);
    return root.dump(2) + "\n";
  }

  std::string out = "precision\trecall\tf1\n";
  out += fixed4(report.overall.precision) + "\t" +
         fixed4(report.overall.recall) + "\t" + fixed4(report.overall.f1) +
         "\n";

  out += "\ntype\ttp\tfp\tfn\tprecision\trecall\tf1\n";
  append_metrics_row(out, "overall", report.overall);
  for (ConceptType t : kConceptTypes)
    append_metrics_row(out, to_string(t), report.for_type(t));

  if (breakdown) {
    out += "\nerror_category\tcount\n";
    out += "wrong_type_only\t" + std::to_string(breakdown->wrong_type_only) +
           "\n";
    out += "one_boundary_wrong\t" +
           std::to_string(breakdown->one_boundary_wrong) + "\n";
    out += "both_boundaries_wrong\t" +
           std::to_string(breakdown->both_boundaries_wrong) + "\n";
    out += "spurious\t" + std::to_string(breakdown->spurious) + "\n";
    out += "missed\t" + std::to_string(breakdown->missed) + "\n";
  }

  if (!rows.empty()) {
    out += "\n" + sweep_tsv(rows);
  }
  return out;
}

std::string render_sweep(const std::vector<SweepRow>& rows,
                         ReportFormat format) {
  if (format == ReportFormat::json) return sweep_json(rows).dump(2) + "\n";
  return sweep_tsv(rows);
}

}  // namespace encon
