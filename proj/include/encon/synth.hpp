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

#include <cstdint>
#include <string>
#include <vector>

#include "encon/corpus.hpp"

namespace encon {
namespace synth {

/// Deterministic pseudo-clinical corpus: sentence templates with concept
/// slots filled from a fixed phrase inventory; the generated text is its
/// own gold standard. Same (docs, seed) always gives the same corpus.
GoldCorpus generate_corpus(std::size_t docs, std::uint64_t seed);

/// The phrase inventory as lexicon text (`term<TAB>type` lines), so a
/// gazetteer loaded from it recovers the corpus gold.
std::string inventory_lexicon();

/// A small strictly separable tagging corpus: every trigger word always
/// carries the same tag and the vocabularies do not overlap, so a
/// perceptron can reach 100% token accuracy on it.
GoldCorpus toy_corpus();

/// Per-annotation corruption rates for simulated annotators.
struct NoiseRates {
  double drop = 0.25;
  double boundary_shift = 0.10;
  double type_flip = 0.05;
  double spurious_add = 0.10;
};

/// Simulates an imperfect annotator: each gold annotation is independently
/// dropped, boundary-shifted by one token, or type-flipped, and spurious
/// spans are added at the given rate. Deterministic in (doc id, seed).
AnnotationSet corrupt(const Document& doc, const AnnotationSet& gold,
                      const NoiseRates& rates, std::uint64_t seed,
                      const std::string& source);

}  // namespace synth
}  // namespace encon
