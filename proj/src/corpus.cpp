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

#include "encon/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "encon/con_format.hpp"

namespace encon {

const Document& GoldCorpus::document(const std::string& doc_id) const {
  auto it = index_.find(doc_id);
  if (it == index_.end())
    throw ValidationError("no document '" + doc_id + "' in corpus");
  return docs_[it->second];
}

const AnnotationSet& GoldCorpus::gold(const std::string& doc_id) const {
  auto it = gold_.find(doc_id);
  if (it == gold_.end())
    throw ValidationError("no document '" + doc_id + "' in corpus");
  return it->second;
}

std::vector<Annotation> GoldCorpus::all_gold() const {
  std::vector<Annotation> out;
  for (const auto& [doc_id, set] : gold_)
    for (const auto& [key, a] : set) out.push_back(a);
  return out;
}

std::size_t GoldCorpus::gold_count() const {
  std::size_t n = 0;
  for (const auto& [doc_id, set] : gold_) n += set.size();
  return n;
}

GoldCorpus load_corpus(
    const std::vector<std::pair<std::string, std::string>>& txt_entries,
    const std::vector<std::pair<std::string, std::string>>& con_entries) {
  GoldCorpus corpus;
  for (const auto& [doc_id, text] : txt_entries) {
    if (corpus.index_.count(doc_id))
      throw ValidationError("duplicate document id '" + doc_id + "'");
    corpus.index_[doc_id] = 0;  // placeholder until sorted
    corpus.docs_.push_back(Document::tokenize(doc_id, text));
  }
  std::sort(corpus.docs_.begin(), corpus.docs_.end(),
            [](const Document& a, const Document& b) { return a.id() < b.id(); });
  for (std::size_t i = 0; i < corpus.docs_.size(); ++i)
    corpus.index_[corpus.docs_[i].id()] = i;

  for (const Document& doc : corpus.docs_)
    corpus.gold_.emplace(doc.id(), AnnotationSet(doc.id(), "gold"));

  std::map<std::string, bool> seen_con;
  for (const auto& [doc_id, con_text] : con_entries) {
    auto it = corpus.index_.find(doc_id);
    if (it == corpus.index_.end())
      throw ValidationError("annotation entry '" + doc_id +
                            "' has no matching record");
    if (seen_con[doc_id])
      throw ValidationError("duplicate annotation entry '" + doc_id + "'");
    seen_con[doc_id] = true;
    try {
      corpus.gold_[doc_id] = parse_con(con_text, corpus.docs_[it->second], "gold");
    } catch (const Error& e) {
      throw ValidationError("document '" + doc_id + "': " + e.what());
    }
  }
  return corpus;
}

namespace {

std::vector<std::filesystem::path> sorted_files_with_extension(
    const std::filesystem::path& dir, const std::string& ext) {
  if (!std::filesystem::is_directory(dir))
    throw Error("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ext)
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

GoldCorpus load_corpus_dirs(const std::filesystem::path& records_dir,
                            const std::filesystem::path& annotations_dir) {
  std::vector<std::pair<std::string, std::string>> txt, con;
  for (const auto& path : sorted_files_with_extension(records_dir, ".txt"))
    txt.emplace_back(path.stem().string(), read_file(path));
  for (const auto& path : sorted_files_with_extension(annotations_dir, ".con"))
    con.emplace_back(path.stem().string(), read_file(path));
  return load_corpus(txt, con);
}

GoldCorpus load_records_dir(const std::filesystem::path& records_dir) {
  std::vector<std::pair<std::string, std::string>> txt;
  for (const auto& path : sorted_files_with_extension(records_dir, ".txt"))
    txt.emplace_back(path.stem().string(), read_file(path));
  return load_corpus(txt, {});
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("cannot write " + path.string());
}

}  // namespace encon
