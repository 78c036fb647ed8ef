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

#include "encon/bio.hpp"

#include "encon/con_format.hpp"

namespace encon {

const std::string& to_string(BIOTag tag) {
  static const std::array<std::string, kTagCount> names = {
      "O",      "B-problem", "I-problem", "B-test",
      "I-test", "B-treatment", "I-treatment"};
  return names[static_cast<std::size_t>(tag)];
}

std::optional<BIOTag> bio_tag_from(std::string_view s) {
  for (BIOTag t : kAllTags)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

std::optional<ConceptType> tag_type(BIOTag t) {
  switch (t) {
    case BIOTag::BProblem:
    case BIOTag::IProblem:
      return ConceptType::problem;
    case BIOTag::BTest:
    case BIOTag::ITest:
      return ConceptType::test;
    case BIOTag::BTreatment:
    case BIOTag::ITreatment:
      return ConceptType::treatment;
    case BIOTag::O:
      return std::nullopt;
  }
  return std::nullopt;
}

BIOTag begin_tag(ConceptType t) {
  switch (t) {
    case ConceptType::problem:
      return BIOTag::BProblem;
    case ConceptType::test:
      return BIOTag::BTest;
    case ConceptType::treatment:
      return BIOTag::BTreatment;
  }
  return BIOTag::O;
}

BIOTag inside_tag(ConceptType t) {
  switch (t) {
    case ConceptType::problem:
      return BIOTag::IProblem;
    case ConceptType::test:
      return BIOTag::ITest;
    case ConceptType::treatment:
      return BIOTag::ITreatment;
  }
  return BIOTag::O;
}

std::vector<BIOTag> bio_encode(const Document& doc,
                               const AnnotationSet& gold) {
  // Overlap check first. Annotations come start-sorted out of the set, so a
  // new one overlaps iff it starts at or before the furthest end seen.
  const Annotation* furthest = nullptr;
  for (const auto& [key, a] : gold) {
    if (furthest && a.span.start() <= furthest->span.end())
      throw EncodingError("overlapping gold annotations " +
                          furthest->span.to_string() + " and " +
                          a.span.to_string() + " in document '" + doc.id() +
                          "'");
    if (!furthest || a.span.end() > furthest->span.end()) furthest = &a;
  }

  std::vector<BIOTag> tags(doc.token_count(), BIOTag::O);
  for (const auto& [key, a] : gold) {
    if (!doc.contains(a.span))
      throw ValidationError("span " + a.span.to_string() +
                            " outside document '" + doc.id() + "'");
    std::size_t first = doc.flat_index(a.span.start_line, a.span.start_token);
    std::size_t last = doc.flat_index(a.span.end_line, a.span.end_token);
    tags[first] = begin_tag(a.type);
    for (std::size_t i = first + 1; i <= last; ++i)
      tags[i] = inside_tag(a.type);
  }
  return tags;
}

AnnotationSet bio_decode(const Document& doc, const std::vector<BIOTag>& tags,
                         std::string source) {
  if (tags.size() != doc.token_count())
    throw ValidationError("tag sequence length " +
                          std::to_string(tags.size()) + " != token count " +
                          std::to_string(doc.token_count()) +
                          " of document '" + doc.id() + "'");

  AnnotationSet out(doc.id(), source);
  // Open run: type plus start/end positions, flushed when the run closes.
  std::optional<ConceptType> run_type;
  TokenSpan run;

  auto flush = [&]() {
    if (run_type) out.insert(make_annotation(doc, run, *run_type, source));
    run_type.reset();
  };

  for (int line_no = 1; line_no <= doc.line_count(); ++line_no) {
    flush();  // runs never cross line boundaries
    const auto& toks = doc.line_tokens(line_no);
    for (int t = 0; t < static_cast<int>(toks.size()); ++t) {
      BIOTag tag = tags[doc.flat_index(line_no, t)];
      if (tag == BIOTag::O) {
        flush();
        continue;
      }
      ConceptType type = *tag_type(tag);
      if (is_inside(tag) && run_type && *run_type == type) {
        run.end_line = line_no;
        run.end_token = t;
        continue;
      }
      // B-t, or an I-t with no compatible predecessor (repaired to B-t).
      flush();
      run_type = type;
      run = TokenSpan{line_no, t, line_no, t};
    }
  }
  flush();
  return out;
}

}  // namespace encon
