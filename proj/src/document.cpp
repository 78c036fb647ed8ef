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

#include "encon/document.hpp"

#include <algorithm>

#include "encon/util.hpp"

namespace encon {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_ascii_space(s[i])) ++i;
    std::size_t begin = i;
    while (i < s.size() && !is_ascii_space(s[i])) ++i;
    if (i > begin) out.emplace_back(s.substr(begin, i - begin));
  }
  return out;
}

std::string normalize_term(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const std::string& tok : split_ws(s)) {
    if (!out.empty()) out.push_back(' ');
    out += ascii_lower(tok);
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Document Document::tokenize(std::string doc_id, std::string_view text) {
  Document doc;
  doc.id_ = std::move(doc_id);

  // Split into lines on '\n'; a trailing newline terminates the last line
  // rather than opening an empty one. '\r' before '\n' is stripped.
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = (nl == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    doc.lines_.emplace_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  doc.tokens_.resize(doc.lines_.size());
  doc.flat_begin_.assign(1, 0);
  for (std::size_t li = 0; li < doc.lines_.size(); ++li) {
    const std::string& line = doc.lines_[li];
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_ascii_space(line[i])) ++i;
      std::size_t begin = i;
      while (i < line.size() && !is_ascii_space(line[i])) ++i;
      if (i > begin)
        doc.tokens_[li].push_back(Token{line.substr(begin, i - begin), begin});
    }
    doc.flat_begin_.push_back(doc.flat_begin_.back() + doc.tokens_[li].size());
  }
  return doc;
}

const std::string& Document::line(int line_no) const {
  if (line_no < 1 || line_no > line_count())
    throw ValidationError("document '" + id_ + "': no line " +
                          std::to_string(line_no));
  return lines_[static_cast<std::size_t>(line_no) - 1];
}

const std::vector<Token>& Document::line_tokens(int line_no) const {
  if (line_no < 1 || line_no > line_count())
    throw ValidationError("document '" + id_ + "': no line " +
                          std::to_string(line_no));
  return tokens_[static_cast<std::size_t>(line_no) - 1];
}

bool Document::has_position(int line_no, int token_no) const {
  if (line_no < 1 || line_no > line_count() || token_no < 0) return false;
  return static_cast<std::size_t>(token_no) <
         tokens_[static_cast<std::size_t>(line_no) - 1].size();
}

bool Document::contains(const TokenSpan& span) const {
  return span.wellformed() &&
         has_position(span.start_line, span.start_token) &&
         has_position(span.end_line, span.end_token);
}

const Token& Document::token(int line_no, int token_no) const {
  if (!has_position(line_no, token_no))
    throw ValidationError("document '" + id_ + "': no token " +
                          std::to_string(line_no) + ":" +
                          std::to_string(token_no));
  return tokens_[static_cast<std::size_t>(line_no) - 1]
                [static_cast<std::size_t>(token_no)];
}

std::size_t Document::flat_index(int line_no, int token_no) const {
  if (!has_position(line_no, token_no))
    throw ValidationError("document '" + id_ + "': no token " +
                          std::to_string(line_no) + ":" +
                          std::to_string(token_no));
  return flat_begin_[static_cast<std::size_t>(line_no) - 1] +
         static_cast<std::size_t>(token_no);
}

std::pair<int, int> Document::position(std::size_t flat) const {
  if (flat >= token_count())
    throw ValidationError("document '" + id_ + "': flat index " +
                          std::to_string(flat) + " out of range");
  auto it = std::upper_bound(flat_begin_.begin(), flat_begin_.end(), flat);
  int line_no = static_cast<int>(it - flat_begin_.begin());
  return {line_no,
          static_cast<int>(flat - flat_begin_[static_cast<std::size_t>(line_no) - 1])};
}

std::string Document::text() const {
  std::string out;
  for (const std::string& line : lines_) {
    out += line;
    out.push_back('\n');
  }
  return out;
}

std::string span_text(const Document& doc, const TokenSpan& span) {
  if (!span.wellformed())
    throw ValidationError("span " + span.to_string() + " endpoints out of order");
  if (!doc.has_position(span.start_line, span.start_token))
    throw ValidationError("document '" + doc.id() + "': span start " +
                          std::to_string(span.start_line) + ":" +
                          std::to_string(span.start_token) + " out of range");
  if (!doc.has_position(span.end_line, span.end_token))
    throw ValidationError("document '" + doc.id() + "': span end " +
                          std::to_string(span.end_line) + ":" +
                          std::to_string(span.end_token) + " out of range");

  std::string out;
  for (int line_no = span.start_line; line_no <= span.end_line; ++line_no) {
    const auto& toks = doc.line_tokens(line_no);
    int first = (line_no == span.start_line) ? span.start_token : 0;
    int last = (line_no == span.end_line) ? span.end_token
                                          : static_cast<int>(toks.size()) - 1;
    for (int t = first; t <= last; ++t) {
      if (!out.empty()) out.push_back(' ');
      out += ascii_lower(toks[static_cast<std::size_t>(t)].text);
    }
  }
  return out;
}

std::optional<ConceptType> concept_type_from(std::string_view s) {
  if (s == "problem") return ConceptType::problem;
  if (s == "test") return ConceptType::test;
  if (s == "treatment") return ConceptType::treatment;
  return std::nullopt;
}

}  // namespace encon
