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

#include "encon/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "encon/con_format.hpp"
#include "encon/util.hpp"

namespace encon {
namespace synth {

namespace {

// Concept phrase inventory. Filler vocabulary below is disjoint from these
// phrases, so every inventory occurrence in generated text is a gold span.
const std::vector<std::string> kProblems = {
    "increasing dyspnea",    "chest pain",
    "shortness of breath",   "atrial fibrillation",
    "acute renal failure",   "low grade fever",
    "nausea",                "persistent cough",
    "lower extremity edema", "severe headache",
    "anemia",                "hypertension"};

const std::vector<std::string> kTests = {
    "cbc",                   "chest x-ray",
    "blood cultures",        "serum creatinine",
    "ekg",                   "white count",
    "urinalysis",            "liver panel",
    "arterial blood gas",    "ct scan"};

const std::vector<std::string> kTreatments = {
    "aspirin",               "bronchoalveolar lavage",
    "iv antibiotics",        "lisinopril",
    "bypass grafting",       "supplemental oxygen",
    "heparin drip",          "physical therapy",
    "blood transfusion",     "albuterol nebulizer"};

struct Slot {
  ConceptType type;
};

// Sentence templates; "%P" / "%T" / "%R" mark problem / test / treatment
// slots. Tokens are single-space separated.
const std::vector<std::string> kTemplates = {
    "the patient had %P on exertion .",
    "he was admitted with %P and %P .",
    "%T was unremarkable .",
    "%T showed no change from prior .",
    "she was started on %R for %P .",
    "the patient underwent %R without complication .",
    "follow up %T was ordered .",
    "he denied %P .",
    "home medications include %R and %R .",
    "repeat %T was stable .",
    "the remainder of the exam was benign .",
    "vital signs were within normal limits .",
    "he was discharged home in good condition .",
    "the patient tolerated %R well .",
    "%T revealed %P .",
};

const std::vector<std::string>& phrases_for(ConceptType t) {
  switch (t) {
    case ConceptType::problem:
      return kProblems;
    case ConceptType::test:
      return kTests;
    case ConceptType::treatment:
      return kTreatments;
  }
  return kProblems;
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

}  // namespace

std::string inventory_lexicon() {
  std::string out = "# concept phrase inventory\n";
  for (const std::string& p : kProblems) out += p + "\tproblem\n";
  for (const std::string& p : kTests) out += p + "\ttest\n";
  for (const std::string& p : kTreatments) out += p + "\ttreatment\n";
  return out;
}

GoldCorpus generate_corpus(std::size_t docs, std::uint64_t seed) {
  std::vector<std::pair<std::string, std::string>> txt, con;

  for (std::size_t d = 0; d < docs; ++d) {
    char id_buf[32];
    std::snprintf(id_buf, sizeof(id_buf), "synth-%03zu", d);
    std::string doc_id = id_buf;
    std::mt19937_64 rng(seed ^ fnv1a64(doc_id));

    std::string text;
    // Spans collected while the text grows, serialized at the end.
    struct PendingSpan {
      TokenSpan span;
      ConceptType type;
    };
    std::vector<PendingSpan> spans;

    std::size_t lines = 5 + pick(rng, 9);  // 5..13
    for (std::size_t line_no = 1; line_no <= lines; ++line_no) {
      const std::string& tmpl = kTemplates[pick(rng, kTemplates.size())];
      std::string line;
      int token_index = 0;
      std::size_t i = 0;
      while (i < tmpl.size()) {
        std::size_t sp = tmpl.find(' ', i);
        std::string word = tmpl.substr(i, sp == std::string::npos
                                              ? std::string::npos
                                              : sp - i);
        i = (sp == std::string::npos) ? tmpl.size() : sp + 1;

        if (word == "%P" || word == "%T" || word == "%R") {
          ConceptType type = word == "%P"   ? ConceptType::problem
                             : word == "%T" ? ConceptType::test
                                            : ConceptType::treatment;
          const auto& inventory = phrases_for(type);
          const std::string& phrase = inventory[pick(rng, inventory.size())];
          auto tokens = split_ws(phrase);
          TokenSpan span{static_cast<int>(line_no), token_index,
                         static_cast<int>(line_no),
                         token_index + static_cast<int>(tokens.size()) - 1};
          spans.push_back({span, type});
          for (const std::string& tok : tokens) {
            if (!line.empty()) line += " ";
            // Test names sometimes appear uppercased in records.
            line += (type == ConceptType::test && pick(rng, 3) == 0)
                        ? ascii_upper(tok)
                        : tok;
            ++token_index;
          }
        } else {
          if (!line.empty()) line += " ";
          line += word;
          ++token_index;
        }
      }
      text += line + "\n";
    }

    Document doc = Document::tokenize(doc_id, text);
    AnnotationSet gold(doc_id, "gold");
    for (const PendingSpan& s : spans)
      gold.insert(make_annotation(doc, s.span, s.type, "gold"));

    txt.emplace_back(doc_id, text);
    con.emplace_back(doc_id, serialize_con(gold, doc));
  }
  return load_corpus(txt, con);
}

GoldCorpus toy_corpus() {
  // Trigger words carry one tag each; surrounding vocabulary is disjoint.
  const std::vector<std::string> records = {
      "the patient reported dyspnea today",
      "she complained of chest pain overnight",
      "we ordered a cbc this morning",
      "blood cultures were drawn at admission",
      "he received aspirin before transfer",
      "oxygen therapy was continued overnight",
      "dyspnea improved after oxygen therapy",
      "a cbc and blood cultures were sent",
      "chest pain resolved without aspirin",
      "the patient denied dyspnea and chest pain",
      "repeat cbc was pending at discharge",
      "aspirin was held before the procedure",
  };
  struct ToyConcept {
    std::string phrase;
    ConceptType type;
  };
  const std::vector<ToyConcept> concepts = {
      {"dyspnea", ConceptType::problem},
      {"chest pain", ConceptType::problem},
      {"cbc", ConceptType::test},
      {"blood cultures", ConceptType::test},
      {"aspirin", ConceptType::treatment},
      {"oxygen therapy", ConceptType::treatment},
  };

  std::vector<std::pair<std::string, std::string>> txt, con;
  for (std::size_t i = 0; i < records.size(); ++i) {
    char id_buf[32];
    std::snprintf(id_buf, sizeof(id_buf), "toy-%02zu", i);
    std::string doc_id = id_buf;
    Document doc = Document::tokenize(doc_id, records[i] + "\n");

    AnnotationSet gold(doc_id, "gold");
    const auto& toks = doc.line_tokens(1);
    for (std::size_t t = 0; t < toks.size(); ++t) {
      for (const ToyConcept& c : concepts) {
        auto words = split_ws(c.phrase);
        if (t + words.size() > toks.size()) continue;
        bool match = true;
        for (std::size_t w = 0; w < words.size(); ++w)
          if (ascii_lower(toks[t + w].text) != words[w]) {
            match = false;
            break;
          }
        if (match) {
          TokenSpan span{1, static_cast<int>(t), 1,
                         static_cast<int>(t + words.size() - 1)};
          gold.insert(make_annotation(doc, span, c.type, "gold"));
        }
      }
    }
    txt.emplace_back(doc_id, records[i] + "\n");
    con.emplace_back(doc_id, serialize_con(gold, doc));
  }
  return load_corpus(txt, con);
}

AnnotationSet corrupt(const Document& doc, const AnnotationSet& gold,
                      const NoiseRates& rates, std::uint64_t seed,
                      const std::string& source) {
  std::mt19937_64 rng(seed ^ fnv1a64(doc.id()));
  AnnotationSet out(doc.id(), source);

  for (const auto& [key, a] : gold) {
    if (unit_double(rng) < rates.drop) continue;

    TokenSpan span = a.span;
    if (unit_double(rng) < rates.boundary_shift) {
      // Candidate one-token moves that keep the span valid and non-empty.
      std::vector<TokenSpan> moves;
      auto consider = [&](TokenSpan s) {
        if (s.wellformed() && doc.contains(s)) moves.push_back(s);
      };
      consider({span.start_line, span.start_token - 1, span.end_line,
                span.end_token});
      consider({span.start_line, span.start_token + 1, span.end_line,
                span.end_token});
      consider({span.start_line, span.start_token, span.end_line,
                span.end_token - 1});
      consider({span.start_line, span.start_token, span.end_line,
                span.end_token + 1});
      if (!moves.empty()) span = moves[pick(rng, moves.size())];
    }

    ConceptType type = a.type;
    if (unit_double(rng) < rates.type_flip) {
      auto other = pick(rng, 2);
      std::size_t idx = (static_cast<std::size_t>(type) + 1 + other) % 3;
      type = kConceptTypes[idx];
    }

    out.insert(make_annotation(doc, span, type, source));
  }

  // Spurious additions, one chance per gold annotation.
  std::vector<int> nonempty_lines;
  for (int line_no = 1; line_no <= doc.line_count(); ++line_no)
    if (!doc.line_tokens(line_no).empty()) nonempty_lines.push_back(line_no);
  if (!nonempty_lines.empty()) {
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (unit_double(rng) >= rates.spurious_add) continue;
      int line_no = nonempty_lines[pick(rng, nonempty_lines.size())];
      int len = static_cast<int>(doc.line_tokens(line_no).size());
      int start = static_cast<int>(pick(rng, static_cast<std::size_t>(len)));
      int span_len = 1 + static_cast<int>(pick(rng, 3));
      int end = std::min(start + span_len - 1, len - 1);
      TokenSpan span{line_no, start, line_no, end};
      out.insert(make_annotation(
          doc, span, kConceptTypes[pick(rng, 3)], source));
    }
  }
  return out;
}

}  // namespace synth
}  // namespace encon
