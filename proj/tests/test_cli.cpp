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
//
// End-to-end tests of the command-line tool: every subcommand is run as a
// real subprocess against the bundled data and fixtures.

#include <doctest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <string>

#include "encon/corpus.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using testutil::run_command;

namespace {

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

std::string cli() { return testutil::cli_path(); }

fs::path fixtures() { return testutil::fixture_dir(); }
fs::path data() { return testutil::data_dir(); }

const char* kExampleCon =
    "c=\"increasing dyspnea\" 1:3 1:4||t=\"problem\"\n"
    "c=\"a bronchoalveolar lavage\" 1:9 1:11||t=\"treatment\"\n"
    "c=\"cbc\" 1:14 1:14||t=\"test\"\n";

}  // namespace

TEST_CASE("annotate writes canonical concept lines to stdout") {
  auto result = run_command(
      cli() + " annotate --config " + q(fixtures() / "configs" /
                                        "unanimous3.json") +
      " " + q(fixtures() / "records" / "example.txt") + " 2>/dev/null");
  CHECK(result.exit_code == 0);
  CHECK(result.output == kExampleCon);
}

TEST_CASE("annotate --format json emits the service payload") {
  auto result = run_command(
      cli() + " annotate --format json --config " +
      q(fixtures() / "configs" / "unanimous3.json") + " " +
      q(fixtures() / "records" / "example.txt") + " 2>/dev/null");
  CHECK(result.exit_code == 0);
  json j = json::parse(result.output);
  CHECK(j["doc_id"] == "example");
  CHECK(j["threshold"] == 3);
  REQUIRE(j["annotations"].size() == 3);
  CHECK(j["annotations"][0]["votes"] == 3);
  CHECK(j["failures"].empty());
}

TEST_CASE("annotate --threshold changes what survives the vote") {
  testutil::TempDir tmp;
  encon::write_file(tmp / "note.txt",
                    "aspirin for increasing dyspnea and chest pain\n");
  std::string base = cli() + " annotate --config " +
                     q(fixtures() / "configs" / "mixed.json") + " " +
                     q(tmp / "note.txt") + " 2>/dev/null";

  auto at_config = run_command(base);  // configured threshold: 2
  CHECK(at_config.exit_code == 0);
  CHECK(at_config.output.find("increasing dyspnea") != std::string::npos);
  CHECK(at_config.output.find("chest pain") == std::string::npos);

  auto at_one = run_command(cli() + " annotate --threshold 1 --config " +
                            q(fixtures() / "configs" / "mixed.json") + " " +
                            q(tmp / "note.txt") + " 2>/dev/null");
  CHECK(at_one.exit_code == 0);
  CHECK(at_one.output.find("chest pain") != std::string::npos);
}

TEST_CASE("annotate --records writes one file per record") {
  testutil::TempDir tmp;
  encon::write_file(tmp / "ensemble.json",
                    std::string("{\n  \"annotators\": [\n    {\"id\": "
                                "\"gaz\", \"kind\": \"gazetteer\", "
                                "\"lexicon\": \"") +
                        (data() / "lexicons" / "inventory.lex").string() +
                        "\"}\n  ],\n  \"threshold\": 1\n}\n");
  fs::path out_dir = tmp / "out";
  auto result = run_command(
      cli() + " annotate --config " + q(tmp / "ensemble.json") +
      " --records " + q(data() / "synthetic" / "records") + " --out-dir " +
      q(out_dir) + " 2>/dev/null");
  CHECK(result.exit_code == 0);

  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(out_dir)) {
    if (entry.path().extension() == ".con") ++files;
  }
  encon::GoldCorpus corpus =
      encon::load_records_dir(data() / "synthetic" / "records");
  CHECK(files == corpus.size());

  // The per-file output matches annotating the same record alone.
  const std::string first_id = corpus.documents().front().id();
  auto single = run_command(
      cli() + " annotate --config " + q(tmp / "ensemble.json") + " " +
      q(data() / "synthetic" / "records" / (first_id + ".txt")) +
      " 2>/dev/null");
  CHECK(single.exit_code == 0);
  CHECK(encon::read_file(out_dir / (first_id + ".con")) == single.output);
}

TEST_CASE("the full-lexicon gazetteer reproduces the synthetic gold") {
  testutil::TempDir tmp;
  encon::write_file(tmp / "ensemble.json",
                    std::string("{\"annotators\": [{\"id\": \"gaz\", "
                                "\"kind\": \"gazetteer\", \"lexicon\": \"") +
                        (data() / "lexicons" / "inventory.lex").string() +
                        "\"}], \"threshold\": 1}\n");
  fs::path out_dir = tmp / "out";
  auto annotate = run_command(
      cli() + " annotate --config " + q(tmp / "ensemble.json") +
      " --records " + q(data() / "synthetic" / "records") + " --out-dir " +
      q(out_dir) + " 2>/dev/null");
  REQUIRE(annotate.exit_code == 0);

  auto eval = run_command(
      cli() + " eval --records " + q(data() / "synthetic" / "records") +
      " --gold " + q(data() / "synthetic" / "gold") + " --system " +
      q(out_dir) + " --format json 2>/dev/null");
  REQUIRE(eval.exit_code == 0);
  json j = json::parse(eval.output);
  CHECK(j["overall"]["precision"] == 1.0);
  CHECK(j["overall"]["recall"] == 1.0);
  CHECK(j["overall"]["fp"] == 0);
  CHECK(j["overall"]["fn"] == 0);
}

TEST_CASE("train reports convergence and the model annotates the toy set") {
  testutil::TempDir tmp;
  fs::path model = tmp / "tagger.bin";
  auto train = run_command(
      cli() + " train --records " + q(data() / "toy" / "records") +
      " --gold " + q(data() / "toy" / "gold") + " --model " + q(model) +
      " --epochs 10 --seed 1 2>/dev/null");
  REQUIRE(train.exit_code == 0);
  CHECK(train.output.find("training token accuracy 1.0000") !=
        std::string::npos);
  REQUIRE(fs::exists(model));

  encon::write_file(tmp / "tagger.json",
                    std::string("{\"annotators\": [{\"id\": \"tagger\", "
                                "\"kind\": \"perceptron\", \"model\": \"") +
                        model.string() + "\"}], \"threshold\": 1}\n");
  fs::path out_dir = tmp / "sys";
  auto annotate = run_command(
      cli() + " annotate --config " + q(tmp / "tagger.json") + " --records " +
      q(data() / "toy" / "records") + " --out-dir " + q(out_dir) +
      " 2>/dev/null");
  REQUIRE(annotate.exit_code == 0);

  auto eval = run_command(
      cli() + " eval --records " + q(data() / "toy" / "records") + " --gold " +
      q(data() / "toy" / "gold") + " --system " + q(out_dir) +
      " --format json 2>/dev/null");
  REQUIRE(eval.exit_code == 0);
  json j = json::parse(eval.output);
  CHECK(j["overall"]["precision"] == 1.0);
  CHECK(j["overall"]["recall"] == 1.0);
}

TEST_CASE("train is deterministic for a fixed seed") {
  testutil::TempDir tmp;
  std::string base = cli() + " train --records " +
                     q(data() / "toy" / "records") + " --gold " +
                     q(data() / "toy" / "gold") + " --epochs 5 --seed 7 ";
  auto first = run_command(base + "--model " + q(tmp / "a.bin") +
                           " 2>/dev/null");
  auto second = run_command(base + "--model " + q(tmp / "b.bin") +
                            " 2>/dev/null");
  REQUIRE(first.exit_code == 0);
  REQUIRE(second.exit_code == 0);
  CHECK(encon::read_file(tmp / "a.bin") == encon::read_file(tmp / "b.bin"));
}

TEST_CASE("eval of gold against itself is a perfect score") {
  auto result = run_command(
      cli() + " eval --records " + q(data() / "toy" / "records") + " --gold " +
      q(data() / "toy" / "gold") + " --system " + q(data() / "toy" / "gold") +
      " --errors 2>/dev/null");
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.find("precision\trecall\tf1\n1.0000\t1.0000\t1.0000\n") !=
        std::string::npos);
  CHECK(result.output.find("wrong_type_only\t0\n") != std::string::npos);
  CHECK(result.output.find("spurious\t0\n") != std::string::npos);
  CHECK(result.output.find("missed\t0\n") != std::string::npos);
}

TEST_CASE("eval --out writes the report to a file instead of stdout") {
  testutil::TempDir tmp;
  fs::path report = tmp / "report.tsv";
  auto result = run_command(
      cli() + " eval --records " + q(data() / "toy" / "records") + " --gold " +
      q(data() / "toy" / "gold") + " --system " + q(data() / "toy" / "gold") +
      " --out " + q(report) + " 2>/dev/null");
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.empty());
  CHECK(encon::read_file(report).find("precision\trecall\tf1") !=
        std::string::npos);
}

TEST_CASE("sweep over the noisy annotators yields the voting curve") {
  std::string dirs;
  for (int i = 1; i <= 6; ++i) {
    dirs += " " + q(data() / "noisy" / ("noisy" + std::to_string(i)));
  }
  auto result = run_command(
      cli() + " sweep --records " + q(data() / "synthetic" / "records") +
      " --gold " + q(data() / "synthetic" / "gold") + " --outputs" + dirs +
      " --format json 2>/dev/null");
  REQUIRE(result.exit_code == 0);
  json rows = json::parse(result.output);
  REQUIRE(rows.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(rows[i]["threshold"] == i + 1);
  // Recall falls and precision climbs as the vote bar rises.
  for (int i = 1; i < 6; ++i) {
    CHECK(rows[i]["recall"].get<double>() <
          rows[i - 1]["recall"].get<double>());
    CHECK(rows[i]["precision"].get<double>() >=
          rows[i - 1]["precision"].get<double>());
  }
  // Majority-ish voting beats both extremes of the curve.
  double best_f = 0.0;
  for (int i = 0; i < 6; ++i) {
    best_f = std::max(best_f, rows[i]["f1"].get<double>());
  }
  CHECK(best_f > rows[0]["f1"].get<double>());
  CHECK(best_f > rows[5]["f1"].get<double>());
}

TEST_CASE("sweep --thresholds restricts the table") {
  auto result = run_command(
      cli() + " sweep --records " + q(data() / "synthetic" / "records") +
      " --gold " + q(data() / "synthetic" / "gold") + " --outputs " +
      q(data() / "noisy" / "noisy1") + " " + q(data() / "noisy" / "noisy2") +
      " --thresholds 2 2>/dev/null");
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.find("threshold\tprecision\trecall\tf1\n2\t") !=
        std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_command(cli() + " 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " frobnicate 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " annotate 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " eval --records " +
                    q(data() / "toy" / "records") + " 2>/dev/null")
            .exit_code == 2);
  CHECK(run_command(cli() + " annotate --config " +
                    q(fixtures() / "configs" / "unanimous3.json") +
                    " --format yaml x.txt 2>/dev/null")
            .exit_code == 2);

  // Input files and --records are mutually exclusive; multiple records
  // need --out-dir.
  CHECK(run_command(cli() + " annotate --config " +
                    q(fixtures() / "configs" / "unanimous3.json") +
                    " 2>/dev/null")
            .exit_code == 2);
  CHECK(run_command(cli() + " annotate --config " +
                    q(fixtures() / "configs" / "unanimous3.json") + " " +
                    q(fixtures() / "records" / "example.txt") + " --records " +
                    q(data() / "toy" / "records") + " 2>/dev/null")
            .exit_code == 2);
  CHECK(run_command(cli() + " annotate --config " +
                    q(fixtures() / "configs" / "unanimous3.json") +
                    " --records " + q(data() / "toy" / "records") +
                    " 2>/dev/null")
            .exit_code == 2);
}

TEST_CASE("operational failures exit with 1 and explain themselves") {
  testutil::TempDir tmp;
  encon::write_file(tmp / "broken.json",
                    "{\"annotators\": [{\"id\": \"gaz\", \"kind\": "
                    "\"gazetteer\", \"lexicon\": \"/nonexistent.lex\"}], "
                    "\"threshold\": 1}\n");
  auto result = run_command(cli() + " annotate --config " +
                            q(tmp / "broken.json") + " " +
                            q(fixtures() / "records" / "example.txt") +
                            " 2>&1");
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("error:") != std::string::npos);

  // A system annotation without a matching record is an operational error.
  encon::write_file(tmp / "orphan.con", "");
  auto orphan = run_command(
      cli() + " eval --records " + q(data() / "toy" / "records") + " --gold " +
      q(data() / "toy" / "gold") + " --system " + q(tmp.path()) + " 2>&1");
  CHECK(orphan.exit_code == 1);
  CHECK(orphan.output.find("orphan") != std::string::npos);

  auto missing = run_command(cli() + " annotate --config " +
                             q(fixtures() / "configs" / "unanimous3.json") +
                             " /nonexistent-note.txt 2>&1");
  CHECK(missing.exit_code == 1);
}
