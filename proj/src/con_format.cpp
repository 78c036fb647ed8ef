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

#include "encon/con_format.hpp"

#include <charconv>

namespace encon {

namespace {

// Parses "<line>:<token>" with no sign, no spaces, no trailing junk.
bool parse_position(std::string_view field, int& line_no, int& token_no) {
  std::size_t colon = field.find(':');
  if (colon == std::string_view::npos || colon == 0 ||
      colon + 1 == field.size())
    return false;
  auto parse_int = [](std::string_view s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && out >= 0;
  };
  return parse_int(field.substr(0, colon), line_no) &&
         parse_int(field.substr(colon + 1), token_no);
}

}  // namespace

AnnotationSet parse_con(std::string_view con_text, const Document& doc,
                        std::string source) {
  AnnotationSet set(doc.id(), source);

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= con_text.size()) {
    if (pos == con_text.size()) break;
    std::size_t nl = con_text.find('\n', pos);
    std::string_view line = (nl == std::string_view::npos)
                                ? con_text.substr(pos)
                                : con_text.substr(pos, nl - pos);
    pos = (nl == std::string_view::npos) ? con_text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    // c="<text>" <sl>:<st> <el>:<et>||t="<type>"
    if (line.substr(0, 3) != "c=\"")
      throw ParseError("expected c=\"...\" at start of annotation", line_no);

    std::size_t type_sep = line.rfind("||t=\"");
    if (type_sep == std::string_view::npos)
      throw ParseError("missing ||t=\"...\" type field", line_no);
    std::string_view type_field = line.substr(type_sep + 5);
    if (type_field.empty() || type_field.back() != '"')
      throw ParseError("type field not closed with '\"'", line_no);
    type_field.remove_suffix(1);
    auto type = concept_type_from(type_field);
    if (!type)
      throw ParseError("unknown concept type \"" + std::string(type_field) +
                           "\"",
                       line_no);

    // Between the c=" prefix and ||t= sit the quoted text and the two
    // positions. Positions are taken from the right so quotes or digits
    // inside the concept text cannot confuse the split.
    std::string_view left = line.substr(3, type_sep - 3);
    std::size_t sp2 = left.rfind(' ');
    if (sp2 == std::string_view::npos || sp2 == 0)
      throw ParseError("missing span positions", line_no);
    std::string_view end_field = left.substr(sp2 + 1);
    std::size_t sp1 = left.rfind(' ', sp2 - 1);
    if (sp1 == std::string_view::npos)
      throw ParseError("missing span start position", line_no);
    std::string_view start_field = left.substr(sp1 + 1, sp2 - sp1 - 1);
    std::string_view text_field = left.substr(0, sp1);
    if (text_field.empty() || text_field.back() != '"')
      throw ParseError("concept text not closed with '\"'", line_no);

    TokenSpan span;
    if (!parse_position(start_field, span.start_line, span.start_token))
      throw ParseError("bad span start \"" + std::string(start_field) + "\"",
                       line_no);
    if (!parse_position(end_field, span.end_line, span.end_token))
      throw ParseError("bad span end \"" + std::string(end_field) + "\"",
                       line_no);

    if (!span.wellformed())
      throw ParseError("span " + span.to_string() + " endpoints out of order",
                       line_no);
    if (!doc.contains(span))
      throw ParseError(
          "span " + span.to_string() + " outside document '" + doc.id() + "'",
          line_no);

    set.insert(make_annotation(doc, span, *type, source));
  }
  return set;
}

std::string con_line(const Annotation& a, const Document& doc) {
  return "c=\"" + span_text(doc, a.span) + "\" " + a.span.to_string() +
         "||t=\"" + to_string(a.type) + "\"";
}

std::string serialize_con(const AnnotationSet& annotations,
                          const Document& doc) {
  std::string out;
  for (const auto& [key, a] : annotations) {
    if (a.doc_id != doc.id())
      throw ValidationError("annotation for '" + a.doc_id +
                            "' serialized against document '" + doc.id() +
                            "'");
    if (!doc.contains(a.span))
      throw ValidationError("span " + a.span.to_string() +
                            " outside document '" + doc.id() + "'");
    out += con_line(a, doc);
    out.push_back('\n');
  }
  return out;
}

Annotation make_annotation(const Document& doc, const TokenSpan& span,
                           ConceptType type, std::string source) {
  Annotation a;
  a.doc_id = doc.id();
  a.span = span;
  a.type = type;
  a.text = span_text(doc, span);
  a.source = std::move(source);
  return a;
}

}  // namespace encon
