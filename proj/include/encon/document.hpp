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

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "encon/types.hpp"

namespace encon {

/// One whitespace token together with its byte offset inside its line.
/// Slicing the line at [offset, offset + text.size()) gives back the token
/// verbatim.
struct Token {
  std::string text;
  std::size_t offset = 0;
};

/// A record split into newline-delimited lines and whitespace tokens.
/// This is the coordinate system every span in the system refers to:
/// lines are 1-based, tokens 0-based within their line. Documents are
/// immutable after tokenize() and safe to share across threads.
class Document {
 public:
  Document() = default;

  /// Splits text into lines (LF or CRLF) and each line into maximal runs
  /// of non-whitespace bytes. Total: any text tokenizes, empty text gives
  /// a document with zero lines.
  static Document tokenize(std::string doc_id, std::string_view text);

  const std::string& id() const { return id_; }

  int line_count() const { return static_cast<int>(lines_.size()); }
  bool empty() const { return lines_.empty(); }

  /// 1-based access; throws ValidationError out of range.
  const std::string& line(int line_no) const;
  const std::vector<Token>& line_tokens(int line_no) const;

  std::size_t token_count() const {
    return flat_begin_.empty() ? 0 : flat_begin_.back();
  }

  bool has_position(int line_no, int token_no) const;
  bool contains(const TokenSpan& span) const;
  const Token& token(int line_no, int token_no) const;

  /// Document-order (flattened) index of a token position and back.
  std::size_t flat_index(int line_no, int token_no) const;
  std::pair<int, int> position(std::size_t flat) const;

  /// Reconstructs the record text: lines joined with '\n', trailing newline
  /// when the document has at least one line.
  std::string text() const;

 private:
  std::string id_;
  std::vector<std::string> lines_;
  std::vector<std::vector<Token>> tokens_;
  std::vector<std::size_t> flat_begin_;  // size = line_count + 1
};

/// Surface form of a span: covered tokens joined with single spaces (line
/// breaks inside the span also become single spaces), lowercased.
/// Throws ValidationError naming the offending endpoint when the span does
/// not address tokens of this document.
std::string span_text(const Document& doc, const TokenSpan& span);

}  // namespace encon
