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
// Times the OpenMP corpus kernels against their serial references on a
// generated corpus, and checks that both produce identical results. The
// two kernels are corpus annotation (one pipeline run per document) and
// the threshold sweep (one tally per document, scored at every
// threshold).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "encon/ensemble.hpp"
#include "encon/eval.hpp"
#include "encon/gazetteer.hpp"
#include "encon/perceptron.hpp"
#include "encon/synth.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace encon;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(int repeats, F&& run) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto start = Clock::now();
    run();
    const std::chrono::duration<double, std::milli> elapsed =
        Clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel corpus-kernel benchmark"};
  std::size_t docs = 200;
  int repeats = 3;
  std::uint64_t seed = 97;
  app.add_option("--docs", docs, "benchmark corpus size");
  app.add_option("--repeats", repeats, "timed repetitions (best is kept)");
  app.add_option("--seed", seed, "corpus seed");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("openmp: enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled (serial build)\n");
#endif

  GoldCorpus corpus = synth::generate_corpus(docs, seed);
  std::printf("corpus: %zu documents\n", corpus.size());

  // Pipeline: full + half gazetteer and a tagger trained on the corpus.
  GazetteerLexicon full = load_lexicon(synth::inventory_lexicon());
  PerceptronModel model = perceptron_train(corpus, 3, seed);
  std::vector<std::unique_ptr<Annotator>> annotators;
  annotators.push_back(
      std::make_unique<GazetteerAnnotator>("gaz", std::move(full)));
  annotators.push_back(
      std::make_unique<PerceptronAnnotator>("tagger", std::move(model)));
  Pipeline pipeline(std::move(annotators), 2);

  std::vector<PipelineResult> serial_results;
  std::vector<PipelineResult> parallel_results;
  const double annotate_serial = time_ms(repeats, [&] {
    serial_results = annotate_corpus_serial(pipeline, corpus.documents());
  });
  const double annotate_parallel = time_ms(repeats, [&] {
    parallel_results = annotate_corpus(pipeline, corpus.documents());
  });
  bool same = serial_results.size() == parallel_results.size();
  for (std::size_t i = 0; same && i < serial_results.size(); ++i) {
    same = serial_results[i].combined == parallel_results[i].combined;
  }
  std::printf("annotate_corpus: serial %.1f ms, parallel %.1f ms, "
              "speedup %.2fx, results %s\n",
              annotate_serial, annotate_parallel,
              annotate_serial / annotate_parallel,
              same ? "identical" : "DIFFER");

  // Sweep over six simulated noisy annotators.
  AnnotatorOutputs outputs;
  const synth::NoiseRates rates;
  for (int a = 1; a <= 6; ++a) {
    const std::string id = "noisy" + std::to_string(a);
    PerDocSets sets;
    for (const Document& doc : corpus.documents()) {
      sets[doc.id()] = synth::corrupt(doc, corpus.gold(doc.id()), rates,
                                      seed + a * 7919u, id);
    }
    outputs.emplace_back(id, std::move(sets));
  }
  std::vector<int> thresholds{1, 2, 3, 4, 5, 6};
  std::vector<SweepRow> rows_serial;
  std::vector<SweepRow> rows_parallel;
  const double sweep_serial_ms = time_ms(
      repeats, [&] { rows_serial = sweep_serial(corpus, outputs, thresholds); });
  const double sweep_parallel_ms =
      time_ms(repeats, [&] { rows_parallel = sweep(corpus, outputs, thresholds); });
  bool sweep_same = rows_serial.size() == rows_parallel.size();
  for (std::size_t i = 0; sweep_same && i < rows_serial.size(); ++i) {
    sweep_same = rows_serial[i].threshold == rows_parallel[i].threshold &&
                 rows_serial[i].precision == rows_parallel[i].precision &&
                 rows_serial[i].recall == rows_parallel[i].recall &&
                 rows_serial[i].f1 == rows_parallel[i].f1;
  }
  std::printf("sweep:           serial %.1f ms, parallel %.1f ms, "
              "speedup %.2fx, results %s\n",
              sweep_serial_ms, sweep_parallel_ms,
              sweep_serial_ms / sweep_parallel_ms,
              sweep_same ? "identical" : "DIFFER");

  return same && sweep_same ? 0 : 1;
}
