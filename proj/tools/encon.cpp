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
// encon: ensemble concept annotation over clinical-style records.
//
//   encon annotate --config cfg.json note.txt            concept lines out
//   encon annotate --config cfg.json --records d --out-dir o
//   encon train    --records d --gold g --model m.bin
//   encon eval     --records d --gold g --system s
//   encon sweep    --records d --gold g --outputs a b c
//   encon serve    --config cfg.json
//
// Exit codes: 0 success, 1 operational failure, 2 usage error.

#include <algorithm>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "encon/con_format.hpp"
#include "encon/config.hpp"
#include "encon/corpus.hpp"
#include "encon/ensemble.hpp"
#include "encon/eval.hpp"
#include "encon/perceptron.hpp"
#include "encon/service.hpp"
#include "encon/types.hpp"

namespace fs = std::filesystem;

namespace {

using namespace encon;

void warn_failures(const Document& doc, const PipelineResult& result) {
  for (const AnnotatorFailure& f : result.failures) {
    std::cerr << "warning: " << doc.id() << ": annotator " << f.id
              << " failed: " << f.message << "\n";
  }
}

void emit(const std::string& content, const std::optional<fs::path>& out) {
  if (out) {
    write_file(*out, content);
  } else {
    std::cout << content;
  }
}

/// Reads every .con file in `dir`, pairing each to a corpus document by
/// file stem. Documents without a file get no entry (callers treat that as
/// an empty set); files without a matching record are an error.
PerDocSets load_output_dir(const GoldCorpus& corpus, const fs::path& dir,
                           const std::string& source) {
  if (!fs::is_directory(dir)) {
    throw Error("not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".con") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  PerDocSets sets;
  for (const fs::path& p : files) {
    const std::string id = p.stem().string();
    if (!corpus.has_document(id)) {
      throw Error("annotation file without a matching record: " + p.string());
    }
    sets[id] = parse_con(read_file(p), corpus.document(id), source);
  }
  return sets;
}

struct AnnotateArgs {
  std::string config;
  std::vector<std::string> inputs;
  std::string records_dir;
  std::string out_dir;
  std::optional<int> threshold;
  std::string format = "con";
};

int run_annotate(const AnnotateArgs& args) {
  if (args.inputs.empty() == args.records_dir.empty()) {
    std::cerr << "error: give either input files or --records, not both\n";
    return 2;
  }
  ToolConfig config = load_config_file(args.config);
  Pipeline pipeline = Pipeline::from_config(config.ensemble);

  GoldCorpus corpus;
  if (!args.records_dir.empty()) {
    corpus = load_records_dir(args.records_dir);
  } else {
    std::vector<std::pair<std::string, std::string>> entries;
    for (const std::string& input : args.inputs) {
      fs::path p(input);
      entries.emplace_back(p.stem().string(), read_file(p));
    }
    corpus = load_corpus(entries, {});
  }
  if (corpus.empty()) {
    throw Error("no records to annotate");
  }
  if (args.out_dir.empty() && corpus.size() > 1) {
    std::cerr << "error: multiple records need --out-dir\n";
    return 2;
  }

  std::vector<PipelineResult> results =
      annotate_corpus(pipeline, corpus.documents(), args.threshold);

  if (args.out_dir.empty()) {
    const Document& doc = corpus.documents().front();
    warn_failures(doc, results.front());
    if (args.format == "json") {
      std::cout << annotate_response_json(results.front(), doc);
    } else {
      std::cout << serialize_con(results.front().combined, doc);
    }
    return 0;
  }

  fs::create_directories(args.out_dir);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Document& doc = corpus.documents()[i];
    warn_failures(doc, results[i]);
    const char* ext = args.format == "json" ? ".json" : ".con";
    fs::path out = fs::path(args.out_dir) / (doc.id() + ext);
    if (args.format == "json") {
      write_file(out, annotate_response_json(results[i], doc));
    } else {
      write_file(out, serialize_con(results[i].combined, doc));
    }
  }
  std::cerr << "annotated " << corpus.size() << " record(s) into "
            << args.out_dir << "\n";
  return 0;
}

struct TrainArgs {
  std::string records_dir;
  std::string gold_dir;
  std::string model_path;
  int epochs = 10;
  std::uint64_t seed = 1;
};

int run_train(const TrainArgs& args) {
  GoldCorpus corpus = load_corpus_dirs(args.records_dir, args.gold_dir);
  PerceptronModel model = perceptron_train(corpus, args.epochs, args.seed);
  std::vector<std::uint8_t> bytes = model.save();
  write_file(args.model_path,
             std::string_view(reinterpret_cast<const char*>(bytes.data()),
                              bytes.size()));
  const double accuracy = token_accuracy(model, corpus);
  std::printf("trained %d epoch(s) on %zu record(s): %zu features, "
              "training token accuracy %.4f\n",
              args.epochs, corpus.size(), model.feature_count(), accuracy);
  return 0;
}

struct EvalArgs {
  std::string records_dir;
  std::string gold_dir;
  std::string system_dir;
  std::string format = "tsv";
  bool errors = false;
  std::optional<fs::path> out;
};

int run_eval(const EvalArgs& args) {
  GoldCorpus corpus = load_corpus_dirs(args.records_dir, args.gold_dir);
  PerDocSets system_sets =
      load_output_dir(corpus, args.system_dir, "system");
  std::vector<Annotation> system;
  for (const auto& [id, set] : system_sets) {
    for (const Annotation& a : set.to_vector()) system.push_back(a);
  }
  std::vector<Annotation> gold = corpus.all_gold();
  EvalReport report = score_exact(gold, system);
  ErrorBreakdown breakdown;
  if (args.errors) breakdown = categorize_errors(gold, system);
  ReportFormat format =
      args.format == "json" ? ReportFormat::json : ReportFormat::tsv;
  emit(render_report(report, args.errors ? &breakdown : nullptr, {}, format),
       args.out);
  return 0;
}

struct SweepArgs {
  std::string records_dir;
  std::string gold_dir;
  std::vector<std::string> output_dirs;
  std::vector<int> thresholds;
  std::string format = "tsv";
  std::optional<fs::path> out;
};

int run_sweep(const SweepArgs& args) {
  GoldCorpus corpus = load_corpus_dirs(args.records_dir, args.gold_dir);
  AnnotatorOutputs outputs;
  for (const std::string& dir : args.output_dirs) {
    fs::path p(dir);
    std::string id = p.filename().string();
    if (id.empty()) id = p.parent_path().filename().string();
    outputs.emplace_back(id, load_output_dir(corpus, p, id));
  }
  std::vector<int> thresholds = args.thresholds;
  if (thresholds.empty()) {
    for (int k = 1; k <= static_cast<int>(outputs.size()); ++k) {
      thresholds.push_back(k);
    }
  }
  std::vector<SweepRow> rows = sweep(corpus, outputs, thresholds);
  ReportFormat format =
      args.format == "json" ? ReportFormat::json : ReportFormat::tsv;
  emit(render_sweep(rows, format), args.out);
  return 0;
}

AnnotationService* g_service = nullptr;

void handle_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

struct ServeArgs {
  std::string config;
  std::optional<std::string> host;
  std::optional<int> port;
};

int run_serve(const ServeArgs& args) {
  ToolConfig config = load_config_file(args.config);
  if (args.host) config.service.host = *args.host;
  if (args.port) config.service.port = *args.port;
  AnnotationService service(config.service,
                            Pipeline::from_config(config.ensemble));
  g_service = &service;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  std::cerr << "listening on " << config.service.host << ":"
            << config.service.port << "\n";
  service.run();
  g_service = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ensemble concept annotation for clinical-style records"};
  app.require_subcommand(1);

  AnnotateArgs annotate_args;
  CLI::App* annotate = app.add_subcommand(
      "annotate", "annotate records with the configured ensemble");
  annotate->add_option("--config", annotate_args.config, "pipeline config")
      ->required()
      ->check(CLI::ExistingFile);
  annotate->add_option("inputs", annotate_args.inputs, "record files");
  annotate->add_option("--records", annotate_args.records_dir,
                       "directory of .txt records")
      ->check(CLI::ExistingDirectory);
  annotate->add_option("--out-dir", annotate_args.out_dir,
                       "write one output file per record here");
  annotate->add_option("--threshold", annotate_args.threshold,
                       "override the configured vote threshold");
  annotate->add_option("--format", annotate_args.format, "con or json")
      ->check(CLI::IsMember({"con", "json"}));

  TrainArgs train_args;
  CLI::App* train =
      app.add_subcommand("train", "train the perceptron tagger");
  train->add_option("--records", train_args.records_dir, "training records")
      ->required()
      ->check(CLI::ExistingDirectory);
  train->add_option("--gold", train_args.gold_dir, "reference .con files")
      ->required()
      ->check(CLI::ExistingDirectory);
  train->add_option("--model", train_args.model_path, "model file to write")
      ->required();
  train->add_option("--epochs", train_args.epochs, "training epochs");
  train->add_option("--seed", train_args.seed, "shuffle seed");

  EvalArgs eval_args;
  CLI::App* eval =
      app.add_subcommand("eval", "score system output against gold");
  eval->add_option("--records", eval_args.records_dir, "record files")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval->add_option("--gold", eval_args.gold_dir, "reference .con files")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval->add_option("--system", eval_args.system_dir, "system .con files")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval->add_option("--format", eval_args.format, "tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));
  eval->add_flag("--errors", eval_args.errors,
                 "include the error-category breakdown");
  eval->add_option("--out", eval_args.out, "write the report here");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "score the ensemble at a range of vote thresholds");
  sweep->add_option("--records", sweep_args.records_dir, "record files")
      ->required()
      ->check(CLI::ExistingDirectory);
  sweep->add_option("--gold", sweep_args.gold_dir, "reference .con files")
      ->required()
      ->check(CLI::ExistingDirectory);
  sweep->add_option("--outputs", sweep_args.output_dirs,
                    "one .con directory per annotator (id = dir name)")
      ->required()
      ->expected(-1);
  sweep->add_option("--thresholds", sweep_args.thresholds,
                    "thresholds to score (default 1..N)");
  sweep->add_option("--format", sweep_args.format, "tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));
  sweep->add_option("--out", sweep_args.out, "write the table here");

  ServeArgs serve_args;
  CLI::App* serve =
      app.add_subcommand("serve", "run the HTTP annotation service");
  serve->add_option("--config", serve_args.config, "pipeline config")
      ->required()
      ->check(CLI::ExistingFile);
  serve->add_option("--host", serve_args.host, "bind address override");
  serve->add_option("--port", serve_args.port, "port override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (annotate->parsed()) return run_annotate(annotate_args);
    if (train->parsed()) return run_train(train_args);
    if (eval->parsed()) return run_eval(eval_args);
    if (sweep->parsed()) return run_sweep(sweep_args);
    if (serve->parsed()) return run_serve(serve_args);
  } catch (const encon::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
