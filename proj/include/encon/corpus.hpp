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

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "encon/annotation.hpp"
#include "encon/document.hpp"

namespace encon {

/// Tokenized documents paired with their reference annotations. Documents
/// are kept sorted by id; documents without an annotation file carry an
/// empty gold set. Immutable after loading, safe to share across workers.
class GoldCorpus {
 public:
  GoldCorpus() = default;

  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }

  const std::vector<Document>& documents() const { return docs_; }
  const Document& document(const std::string& doc_id) const;
  bool has_document(const std::string& doc_id) const {
    return index_.count(doc_id) > 0;
  }

  /// Gold annotations of one document (source "gold").
  const AnnotationSet& gold(const std::string& doc_id) const;

  /// All gold annotations pooled across documents, deterministic order.
  std::vector<Annotation> all_gold() const;
  std::size_t gold_count() const;

  friend GoldCorpus load_corpus(
      const std::vector<std::pair<std::string, std::string>>& txt_entries,
      const std::vector<std::pair<std::string, std::string>>& con_entries);

 private:
  std::vector<Document> docs_;                // sorted by id
  std::map<std::string, std::size_t> index_;  // id -> position in docs_
  std::map<std::string, AnnotationSet> gold_;
};

/// Builds a corpus from in-memory (doc_id, text) record entries and
/// (doc_id, con_text) annotation entries. Duplicate doc ids and annotation
/// entries without a matching record are load errors; parse errors carry the
/// offending doc id.
GoldCorpus load_corpus(
    const std::vector<std::pair<std::string, std::string>>& txt_entries,
    const std::vector<std::pair<std::string, std::string>>& con_entries);

/// Directory layout: records_dir holds one .txt per record, annotations_dir
/// one .con per annotated record, paired by file stem (the doc id). Files
/// with other extensions are ignored.
GoldCorpus load_corpus_dirs(const std::filesystem::path& records_dir,
                            const std::filesystem::path& annotations_dir);

/// Records only (empty gold sets), for annotation runs.
GoldCorpus load_records_dir(const std::filesystem::path& records_dir);

/// Reads one whole file, throwing Error with the path on failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace encon
