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

#include "encon/gazetteer.hpp"

#include <algorithm>

#include "encon/con_format.hpp"
#include "encon/util.hpp"

namespace encon {

void GazetteerLexicon::add(std::string_view term, ConceptType type) {
  std::string key = normalize_term(term);
  if (key.empty()) throw ValidationError("empty lexicon term");
  auto [it, fresh] = entries_.try_emplace(key, type);
  if (!fresh && it->second != type)
    throw ValidationError("conflicting types for term \"" + key + "\": " +
                          to_string(it->second) + " vs " + to_string(type));
  if (fresh) {
    std::size_t tokens = 1;
    for (char c : key)
      if (c == ' ') ++tokens;
    max_tokens_ = std::max(max_tokens_, tokens);
  }
}

GazetteerLexicon load_lexicon(std::string_view entries_text) {
  GazetteerLexicon lexicon;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < entries_text.size()) {
    std::size_t nl = entries_text.find('\n', pos);
    std::string_view line = (nl == std::string_view::npos)
                                ? entries_text.substr(pos)
                                : entries_text.substr(pos, nl - pos);
    pos = (nl == std::string_view::npos) ? entries_text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw ParseError("expected term<TAB>type", line_no);
    std::string_view term = line.substr(0, tab);
    std::string_view type_name = line.substr(tab + 1);
    auto type = concept_type_from(type_name);
    if (!type)
      throw ParseError(
          "unknown concept type \"" + std::string(type_name) + "\"", line_no);
    if (normalize_term(term).empty())
      throw ParseError("empty term", line_no);
    try {
      lexicon.add(term, *type);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return lexicon;
}

AnnotationSet GazetteerAnnotator::annotate(const Document& doc) const {
  AnnotationSet out(doc.id(), id_);
  if (lexicon_.empty()) return out;

  for (int line_no = 1; line_no <= doc.line_count(); ++line_no) {
    const auto& toks = doc.line_tokens(line_no);
    std::vector<std::string> lowered;
    lowered.reserve(toks.size());
    for (const Token& t : toks) lowered.push_back(ascii_lower(t.text));

    std::size_t i = 0;
    while (i < toks.size()) {
      std::size_t longest = 0;
      const ConceptType* match_type = nullptr;
      std::size_t cap = std::min(lexicon_.max_term_tokens(), toks.size() - i);
      std::string key;
      for (std::size_t len = 1; len <= cap; ++len) {
        if (len == 1)
          key = lowered[i];
        else
          key += " " + lowered[i + len - 1];
        if (const ConceptType* t = lexicon_.lookup(key)) {
          longest = len;
          match_type = t;
        }
      }
      if (match_type) {
        TokenSpan span{line_no, static_cast<int>(i), line_no,
                       static_cast<int>(i + longest - 1)};
        out.insert(make_annotation(doc, span, *match_type, id_));
        i += longest;
      } else {
        ++i;
      }
    }
  }
  return out;
}

}  // namespace encon
