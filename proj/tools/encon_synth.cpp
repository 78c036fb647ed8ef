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
// Regenerates the data/ tree: the synthetic benchmark corpus, the
// separable toy corpus, the phrase-inventory lexicons, and the simulated
// noisy-annotator outputs used by the threshold-sweep benchmark. The
// output is deterministic, so regenerating with the same flags leaves a
// clean git diff.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "encon/con_format.hpp"
#include "encon/corpus.hpp"
#include "encon/gazetteer.hpp"
#include "encon/synth.hpp"
#include "encon/types.hpp"

namespace fs = std::filesystem;
using namespace encon;

namespace {

void write_corpus(const GoldCorpus& corpus, const fs::path& records_dir,
                  const fs::path& gold_dir) {
  fs::create_directories(records_dir);
  fs::create_directories(gold_dir);
  for (const Document& doc : corpus.documents()) {
    write_file(records_dir / (doc.id() + ".txt"), doc.text());
    write_file(gold_dir / (doc.id() + ".con"),
               serialize_con(corpus.gold(doc.id()), doc));
  }
}

/// Half of the inventory, by alternating lines: a deliberately weaker
/// gazetteer for ensembles that should disagree.
std::string half_lexicon(const std::string& full) {
  std::istringstream in(full);
  std::ostringstream out;
  std::string line;
  std::size_t term_index = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      out << line << '\n';
      continue;
    }
    if (term_index % 2 == 0) out << line << '\n';
    ++term_index;
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regenerate the bundled synthetic data tree"};
  std::string out_root = "data";
  std::size_t docs = 60;
  std::uint64_t seed = 20260101;
  int annotators = 6;
  app.add_option("--out", out_root, "output root (default data/)");
  app.add_option("--docs", docs, "synthetic corpus size");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--annotators", annotators,
                 "simulated noisy annotators for the sweep benchmark");

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path root(out_root);

    GoldCorpus synthetic = synth::generate_corpus(docs, seed);
    write_corpus(synthetic, root / "synthetic" / "records",
                 root / "synthetic" / "gold");

    GoldCorpus toy = synth::toy_corpus();
    write_corpus(toy, root / "toy" / "records", root / "toy" / "gold");

    const std::string lexicon = synth::inventory_lexicon();
    fs::create_directories(root / "lexicons");
    write_file(root / "lexicons" / "inventory.lex", lexicon);
    write_file(root / "lexicons" / "inventory_half.lex",
               half_lexicon(lexicon));

    // Simulated annotators: same corpus, independent noise per annotator.
    const synth::NoiseRates rates;
    for (int a = 1; a <= annotators; ++a) {
      const std::string id = "noisy" + std::to_string(a);
      const fs::path dir = root / "noisy" / id;
      fs::create_directories(dir);
      for (const Document& doc : synthetic.documents()) {
        AnnotationSet noisy =
            synth::corrupt(doc, synthetic.gold(doc.id()), rates,
                           seed + static_cast<std::uint64_t>(a) * 7919, id);
        write_file(dir / (doc.id() + ".con"), serialize_con(noisy, doc));
      }
    }

    std::cerr << "wrote " << synthetic.size() << " synthetic + " << toy.size()
              << " toy records under " << root.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
