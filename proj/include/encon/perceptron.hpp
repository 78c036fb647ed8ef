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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "encon/annotator.hpp"
#include "encon/bio.hpp"
#include "encon/corpus.hpp"
#include "encon/document.hpp"

namespace encon {

// Feature template, fixed so that independent implementations can agree
// token for token:
//   bias                     always on
//   w=<token lowercased>
//   shape=<per-char map: uppercase->A, lowercase->a, digit->9, other->_ >
//   p3=<first 3 bytes, lowercased; shorter tokens give the whole token>
//   s3=<last 3 bytes, lowercased>
//   prev_w=<previous token in the line, lowercased; _BOS_ at line start>
//   next_w=<next token in the line, lowercased; _EOS_ at line end>
//   prev_tag=<tag string, e.g. O or B-problem>
// The context window never crosses a line boundary.

std::string word_shape(std::string_view token);

/// Deterministic feature list for one token position (document-order index).
std::vector<std::string> extract_features(const Document& doc,
                                          std::size_t position,
                                          BIOTag prev_tag);

/// Averaged-perceptron tag model. Weights are per (feature, tag); the
/// averaging is already folded in after training, so a model is immutable
/// at prediction time and safe to share across threads.
class PerceptronModel {
 public:
  using WeightRow = std::array<double, kTagCount>;
  using Weights = std::map<std::string, WeightRow>;

  static constexpr std::uint32_t kFormatVersion = 1;

  PerceptronModel() = default;
  PerceptronModel(Weights weights, std::uint32_t epochs)
      : weights_(std::move(weights)), epochs_(epochs) {}

  std::uint32_t epochs() const { return epochs_; }
  std::size_t feature_count() const { return weights_.size(); }
  const Weights& weights() const { return weights_; }

  /// Summed weight of the features for each tag.
  WeightRow score(const std::vector<std::string>& features) const;

  /// Greedy left-to-right decode; ties break toward the first tag in the
  /// fixed order (O first). Each line starts with previous tag O.
  std::vector<BIOTag> predict_tags(const Document& doc) const;
  AnnotationSet predict(const Document& doc, const std::string& source) const;

  /// Versioned portable encoding: magic "ENSM", big-endian format version,
  /// label list, then sorted (feature, tag, weight) triples with weights as
  /// big-endian IEEE-754 doubles. Bit-exact across platforms.
  std::vector<std::uint8_t> save() const;
  static PerceptronModel load(const std::vector<std::uint8_t>& bytes);

  friend bool operator==(const PerceptronModel& a, const PerceptronModel& b) {
    return a.weights_ == b.weights_;
  }

 private:
  Weights weights_;
  std::uint32_t epochs_ = 0;
};

/// Trains an averaged perceptron on the corpus gold. Greedy left-to-right
/// with the gold previous tag; on a mistake the gold (feature, tag) weights
/// go up by one and the predicted ones down by one; the running average of
/// all steps is folded into the returned weights. Document order is
/// reshuffled every epoch from the seed, so a fixed (corpus, epochs, seed)
/// gives a bit-identical model.
PerceptronModel perceptron_train(const GoldCorpus& corpus, int epochs,
                                 std::uint64_t seed);

/// Fraction of tokens whose predicted tag equals the gold tag.
double token_accuracy(const PerceptronModel& model, const GoldCorpus& corpus);

class PerceptronAnnotator : public Annotator {
 public:
  PerceptronAnnotator(std::string id, PerceptronModel model)
      : id_(std::move(id)), model_(std::move(model)) {}

  const std::string& id() const override { return id_; }
  std::string kind() const override { return "perceptron"; }
  AnnotationSet annotate(const Document& doc) const override {
    return model_.predict(doc, id_);
  }

  const PerceptronModel& model() const { return model_; }

 private:
  std::string id_;
  PerceptronModel model_;
};

}  // namespace encon
