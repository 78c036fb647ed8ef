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

#include <doctest.h>

#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "encon/config.hpp"
#include "encon/corpus.hpp"
#include "encon/ensemble.hpp"
#include "encon/external.hpp"
#include "encon/gazetteer.hpp"
#include "encon/types.hpp"
#include "testutil.hpp"

using namespace encon;

namespace {

Document shared_doc() {
  return Document::tokenize("d", "the chest pain and cbc\n");
}

AnnotationSet set_of(const Document& doc, const std::string& source,
                     std::vector<std::pair<TokenSpan, ConceptType>> items) {
  AnnotationSet set(doc.id(), source);
  for (const auto& [span, type] : items) {
    set.insert(make_annotation(doc, span, type, source));
  }
  return set;
}

}  // namespace

TEST_CASE("tally_votes counts distinct annotators per exact key") {
  Document doc = shared_doc();
  std::vector<AnnotationSet> sets = {
      set_of(doc, "a",
             {{{1, 1, 1, 2}, ConceptType::problem},
              {{1, 4, 1, 4}, ConceptType::test}}),
      set_of(doc, "b", {{{1, 1, 1, 2}, ConceptType::problem}}),
      set_of(doc, "c",
             {{{1, 1, 1, 2}, ConceptType::treatment},  // same span, other type
              {{1, 4, 1, 4}, ConceptType::test}}),
  };
  VoteTally tally = tally_votes(sets);
  CHECK(tally.doc_id() == "d");
  CHECK(tally.key_count() == 3);
  CHECK(tally.count({"d", {1, 1, 1, 2}, ConceptType::problem}) == 2);
  CHECK(tally.count({"d", {1, 1, 1, 2}, ConceptType::treatment}) == 1);
  CHECK(tally.count({"d", {1, 4, 1, 4}, ConceptType::test}) == 2);
  CHECK(tally.count({"d", {1, 0, 1, 0}, ConceptType::problem}) == 0);
}

TEST_CASE("tally_votes rejects mixed documents and duplicate sources") {
  Document doc = shared_doc();
  Document other = Document::tokenize("other", "cbc\n");
  std::vector<AnnotationSet> mixed = {
      set_of(doc, "a", {{{1, 4, 1, 4}, ConceptType::test}}),
      set_of(other, "b", {{{1, 0, 1, 0}, ConceptType::test}}),
  };
  CHECK_THROWS_AS((void)tally_votes(mixed), ValidationError);

  std::vector<AnnotationSet> duplicated = {
      set_of(doc, "a", {{{1, 4, 1, 4}, ConceptType::test}}),
      set_of(doc, "a", {{{1, 1, 1, 1}, ConceptType::test}}),
  };
  CHECK_THROWS_AS((void)tally_votes(duplicated), ValidationError);

  CHECK(tally_votes({}).key_count() == 0);
}

TEST_CASE("combine keeps keys meeting the threshold") {
  Document doc = shared_doc();
  std::vector<AnnotationSet> sets = {
      set_of(doc, "a",
             {{{1, 1, 1, 2}, ConceptType::problem},
              {{1, 4, 1, 4}, ConceptType::test}}),
      set_of(doc, "b", {{{1, 1, 1, 2}, ConceptType::problem}}),
      set_of(doc, "c", {}),
  };
  VoteTally tally = tally_votes(sets);

  AnnotationSet at1 = combine(tally, 1, doc);
  AnnotationSet at2 = combine(tally, 2, doc);
  AnnotationSet at3 = combine(tally, 3, doc);
  CHECK(at1.size() == 2);
  CHECK(at2.size() == 1);
  CHECK(at3.empty());
  CHECK(at2.contains({1, 1, 1, 2}, ConceptType::problem));

  Annotation kept = at2.to_vector()[0];
  CHECK(kept.source == "ensemble");
  CHECK(kept.text == "chest pain");  // rebuilt from the document
  CHECK(at1.source() == "ensemble");
}

TEST_CASE("combine validates its inputs") {
  Document doc = shared_doc();
  std::vector<AnnotationSet> one_set = {
      set_of(doc, "a", {{{1, 4, 1, 4}, ConceptType::test}})};
  VoteTally tally = tally_votes(one_set);
  CHECK_THROWS_AS((void)combine(tally, 0, doc), ConfigError);
  CHECK_THROWS_AS((void)combine(tally, -2, doc), ConfigError);
  Document other = Document::tokenize("other", "x\n");
  CHECK_THROWS_AS((void)combine(tally, 1, other), ValidationError);
  // A threshold above the vote counts is valid and yields the empty set.
  CHECK(combine(tally, 99, doc).empty());
}

TEST_CASE("voting agrees with the brute-force oracle on random ensembles") {
  std::mt19937_64 rng(5150);
  for (int i = 0; i < 300; ++i) {
    Document doc = testutil::rand_document(rng, "d" + std::to_string(i));
    const int n = testutil::rand_int(rng, 1, 6);
    std::vector<AnnotationSet> sets;
    for (int a = 0; a < n; ++a) {
      sets.push_back(
          testutil::rand_set(rng, doc, "annot" + std::to_string(a)));
    }
    VoteTally tally = tally_votes(sets);
    for (int k = 1; k <= n; ++k) {
      CHECK(testutil::plain_keys(combine(tally, k, doc)) ==
            testutil::oracle_combine(sets, k));
    }
  }
}

TEST_CASE("threshold identities hold on random ensembles") {
  std::mt19937_64 rng(6021);
  for (int i = 0; i < 200; ++i) {
    Document doc = testutil::rand_document(rng, "d" + std::to_string(i));
    const int n = testutil::rand_int(rng, 1, 6);
    std::vector<AnnotationSet> sets;
    for (int a = 0; a < n; ++a) {
      sets.push_back(testutil::rand_set(rng, doc, "s" + std::to_string(a)));
    }
    VoteTally tally = tally_votes(sets);

    // Union at 1.
    std::set<testutil::PlainKey> expected_union;
    for (const auto& s : sets) {
      for (const auto& k : testutil::plain_keys(s)) expected_union.insert(k);
    }
    CHECK(testutil::plain_keys(combine(tally, 1, doc)) == expected_union);

    // Intersection at N.
    std::set<testutil::PlainKey> expected_inter = testutil::plain_keys(sets[0]);
    for (const auto& s : sets) {
      std::set<testutil::PlainKey> keep;
      for (const auto& k : testutil::plain_keys(s)) {
        if (expected_inter.count(k)) keep.insert(k);
      }
      expected_inter = keep;
    }
    CHECK(testutil::plain_keys(combine(tally, n, doc)) == expected_inter);

    // Anti-monotone in the threshold.
    for (int k = 1; k < n; ++k) {
      auto at_k = testutil::plain_keys(combine(tally, k, doc));
      for (const auto& key : testutil::plain_keys(combine(tally, k + 1, doc))) {
        CHECK(at_k.count(key) == 1);
      }
    }
  }
}

TEST_CASE("pipeline runs annotators and reports failures") {
  auto lex_a = load_lexicon("chest pain\tproblem\ncbc\ttest\n");
  auto lex_b = load_lexicon("chest pain\tproblem\n");
  std::vector<std::unique_ptr<Annotator>> annotators;
  annotators.push_back(std::make_unique<GazetteerAnnotator>("a", lex_a));
  annotators.push_back(std::make_unique<GazetteerAnnotator>("b", lex_b));
  Pipeline pipeline(std::move(annotators), 2);

  Document doc = shared_doc();
  PipelineResult result = pipeline.annotate(doc);
  CHECK(result.threshold == 2);
  CHECK(result.failures.empty());
  CHECK(result.combined.size() == 1);
  CHECK(result.combined.contains({1, 1, 1, 2}, ConceptType::problem));

  PipelineResult loose = pipeline.annotate(doc, 1);
  CHECK(loose.combined.size() == 2);

  CHECK_THROWS_AS((void)pipeline.annotate(doc, 0), ConfigError);
  CHECK_THROWS_AS((void)pipeline.annotate(doc, 3), ConfigError);

  CHECK(pipeline_annotate(pipeline, doc) == result.combined);
}

TEST_CASE("pipeline construction is validated") {
  std::vector<std::unique_ptr<Annotator>> empty;
  CHECK_THROWS_AS(Pipeline(std::move(empty), 1), ConfigError);

  std::vector<std::unique_ptr<Annotator>> dup;
  dup.push_back(std::make_unique<GazetteerAnnotator>(
      "same", load_lexicon("cbc\ttest\n")));
  dup.push_back(std::make_unique<GazetteerAnnotator>(
      "same", load_lexicon("cbc\ttest\n")));
  CHECK_THROWS_AS(Pipeline(std::move(dup), 1), ConfigError);

  std::vector<std::unique_ptr<Annotator>> one;
  one.push_back(std::make_unique<GazetteerAnnotator>(
      "g", load_lexicon("cbc\ttest\n")));
  CHECK_THROWS_AS(Pipeline(std::move(one), 2), ConfigError);
}

TEST_CASE("a failing annotator degrades gracefully under the threshold") {
  testutil::TempDir tmp;
  write_file(tmp / "boom.sh", "#!/bin/sh\necho nope >&2\nexit 9\n");
  std::filesystem::permissions(tmp / "boom.sh",
                               std::filesystem::perms::owner_all);

  ExternalAdapterConfig boom;
  boom.command = {(tmp / "boom.sh").string()};

  std::vector<std::unique_ptr<Annotator>> annotators;
  annotators.push_back(std::make_unique<GazetteerAnnotator>(
      "gaz", load_lexicon("cbc\ttest\n")));
  annotators.push_back(std::make_unique<ExternalAnnotator>("ext", boom));
  Pipeline pipeline(std::move(annotators), 1);

  Document doc = shared_doc();
  PipelineResult result = pipeline.annotate(doc);
  REQUIRE(result.failures.size() == 1);
  CHECK(result.failures[0].id == "ext");
  CHECK(result.failures[0].message.find("nope") != std::string::npos);
  CHECK(result.combined.size() == 1);  // the gazetteer still counts

  // With threshold 2 only one annotator can succeed: uninterpretable.
  try {
    pipeline.annotate(doc, 2);
    FAIL_CHECK("no error");
  } catch (const PipelineError& e) {
    REQUIRE(e.failed_ids.size() == 1);
    CHECK(e.failed_ids[0] == "ext");
  }
}

TEST_CASE("from_config builds the fixture ensemble") {
  ToolConfig config = load_config_file(testutil::fixture_dir() / "configs" /
                                       "unanimous3.json");
  Pipeline pipeline = Pipeline::from_config(config.ensemble);
  CHECK(pipeline.annotator_count() == 3);
  CHECK(pipeline.threshold() == 3);

  Document doc = Document::tokenize(
      "doc",
      "The patient had increasing dyspnea on exertion, he had a "
      "bronchoalveolar lavage performed, and CBC was unremarkable.\n");
  PipelineResult result = pipeline.annotate(doc);
  CHECK(result.combined.size() == 3);
  CHECK(result.combined.contains({1, 3, 1, 4}, ConceptType::problem));
  CHECK(result.tally.count({"doc", {1, 3, 1, 4}, ConceptType::problem}) == 3);
}

TEST_CASE("external annotators participate via from_config") {
  ToolConfig config =
      load_config_file(testutil::fixture_dir() / "configs" / "mixed.json");
  Pipeline pipeline = Pipeline::from_config(config.ensemble);
  REQUIRE(pipeline.annotator_count() == 3);
  CHECK(pipeline.annotators()[2]->kind() == "external");

  Document doc = Document::tokenize(
      "doc", "aspirin for increasing dyspnea and chest pain\n");
  PipelineResult result = pipeline.annotate(doc);
  // "aspirin" is in both lexicons and the adapter finds it: 3 votes.
  // "increasing dyspnea" is in both lexicons: 2 votes. "chest pain" is only
  // in the full lexicon: 1 vote, below the threshold of 2.
  CHECK(result.combined.contains({1, 0, 1, 0}, ConceptType::treatment));
  CHECK(result.combined.contains({1, 2, 1, 3}, ConceptType::problem));
  CHECK_FALSE(result.combined.contains({1, 5, 1, 6}, ConceptType::problem));
  CHECK(result.tally.count({"doc", {1, 0, 1, 0}, ConceptType::treatment}) ==
        3);
  CHECK(result.tally.count({"doc", {1, 5, 1, 6}, ConceptType::problem}) == 1);
}
