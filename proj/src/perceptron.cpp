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

#include "encon/perceptron.hpp"

#include <random>

#include "encon/util.hpp"

namespace encon {

std::string word_shape(std::string_view token) {
  std::string shape;
  shape.reserve(token.size());
  for (char c : token) {
    if (c >= 'A' && c <= 'Z')
      shape.push_back('A');
    else if (c >= 'a' && c <= 'z')
      shape.push_back('a');
    else if (c >= '0' && c <= '9')
      shape.push_back('9');
    else
      shape.push_back('_');
  }
  return shape;
}

std::vector<std::string> extract_features(const Document& doc,
                                          std::size_t position,
                                          BIOTag prev_tag) {
  auto [line_no, token_no] = doc.position(position);
  const auto& toks = doc.line_tokens(line_no);
  const std::string& word = toks[static_cast<std::size_t>(token_no)].text;
  std::string lower = ascii_lower(word);

  std::vector<std::string> features;
  features.reserve(8);
  features.emplace_back("bias");
  features.push_back("w=" + lower);
  features.push_back("shape=" + word_shape(word));
  features.push_back("p3=" + lower.substr(0, 3));
  features.push_back("s3=" + (lower.size() > 3
                                  ? lower.substr(lower.size() - 3)
                                  : lower));
  features.push_back(
      "prev_w=" + (token_no > 0
                       ? ascii_lower(
                             toks[static_cast<std::size_t>(token_no) - 1].text)
                       : std::string("_BOS_")));
  features.push_back(
      "next_w=" +
      (static_cast<std::size_t>(token_no) + 1 < toks.size()
           ? ascii_lower(toks[static_cast<std::size_t>(token_no) + 1].text)
           : std::string("_EOS_")));
  features.push_back("prev_tag=" + to_string(prev_tag));
  return features;
}

PerceptronModel::WeightRow PerceptronModel::score(
    const std::vector<std::string>& features) const {
  WeightRow scores{};
  for (const std::string& f : features) {
    auto it = weights_.find(f);
    if (it == weights_.end()) continue;
    for (std::size_t t = 0; t < kTagCount; ++t) scores[t] += it->second[t];
  }
  return scores;
}

namespace {

// First tag in the fixed order wins ties, so all-zero scores decode to O.
BIOTag argmax_tag(const PerceptronModel::WeightRow& scores) {
  std::size_t best = 0;
  for (std::size_t t = 1; t < kTagCount; ++t)
    if (scores[t] > scores[best]) best = t;
  return kAllTags[best];
}

}  // namespace

std::vector<BIOTag> PerceptronModel::predict_tags(const Document& doc) const {
  std::vector<BIOTag> tags(doc.token_count(), BIOTag::O);
  for (int line_no = 1; line_no <= doc.line_count(); ++line_no) {
    BIOTag prev = BIOTag::O;
    const auto& toks = doc.line_tokens(line_no);
    for (int t = 0; t < static_cast<int>(toks.size()); ++t) {
      std::size_t flat = doc.flat_index(line_no, t);
      BIOTag tag = argmax_tag(score(extract_features(doc, flat, prev)));
      tags[flat] = tag;
      prev = tag;
    }
  }
  return tags;
}

AnnotationSet PerceptronModel::predict(const Document& doc,
                                       const std::string& source) const {
  return bio_decode(doc, predict_tags(doc), source);
}

PerceptronModel perceptron_train(const GoldCorpus& corpus, int epochs,
                                 std::uint64_t seed) {
  if (epochs < 1)
    throw TrainError("epochs must be >= 1, got " + std::to_string(epochs));
  if (corpus.empty()) throw TrainError("cannot train on an empty corpus");

  // Encode all gold up front; unencodable gold aborts before any training.
  const auto& docs = corpus.documents();
  std::vector<std::vector<BIOTag>> gold_tags;
  gold_tags.reserve(docs.size());
  for (const Document& doc : docs)
    gold_tags.push_back(bio_encode(doc, corpus.gold(doc.id())));

  PerceptronModel::Weights weights;
  PerceptronModel::Weights totals;  // c-weighted update sums for averaging
  double step = 1.0;                // instance counter, ticks once per token

  auto update = [&](const std::vector<std::string>& features, BIOTag gold,
                    BIOTag predicted) {
    for (const std::string& f : features) {
      auto& w = weights[f];
      auto& u = totals[f];
      std::size_t g = static_cast<std::size_t>(gold);
      std::size_t p = static_cast<std::size_t>(predicted);
      w[g] += 1.0;
      u[g] += step;
      w[p] -= 1.0;
      u[p] -= step;
    }
  };

  std::vector<std::size_t> order(docs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);

  for (int epoch = 0; epoch < epochs; ++epoch) {
    // Hand-rolled Fisher-Yates: the standard shuffle draws an
    // implementation-defined sequence, this one is pinned.
    for (std::size_t i = order.size(); i > 1; --i) {
      std::size_t j = rng() % i;
      std::swap(order[i - 1], order[j]);
    }
    for (std::size_t di : order) {
      const Document& doc = docs[di];
      const auto& gold = gold_tags[di];
      for (int line_no = 1; line_no <= doc.line_count(); ++line_no) {
        BIOTag prev_gold = BIOTag::O;
        const auto& toks = doc.line_tokens(line_no);
        for (int t = 0; t < static_cast<int>(toks.size()); ++t) {
          std::size_t flat = doc.flat_index(line_no, t);
          auto features = extract_features(doc, flat, prev_gold);
          PerceptronModel::WeightRow scores{};
          for (const std::string& f : features) {
            auto it = weights.find(f);
            if (it == weights.end()) continue;
            for (std::size_t k = 0; k < kTagCount; ++k)
              scores[k] += it->second[k];
          }
          BIOTag predicted = argmax_tag(scores);
          BIOTag gold_tag = gold[flat];
          if (predicted != gold_tag) update(features, gold_tag, predicted);
          prev_gold = gold_tag;
          step += 1.0;
        }
      }
    }
  }

  // Fold the running average into the final weights: avg = w - u / steps.
  PerceptronModel::Weights averaged;
  for (const auto& [f, w] : weights) {
    PerceptronModel::WeightRow row{};
    const auto& u = totals[f];
    bool nonzero = false;
    for (std::size_t t = 0; t < kTagCount; ++t) {
      row[t] = w[t] - u[t] / step;
      if (row[t] != 0.0) nonzero = true;
    }
    if (nonzero) averaged.emplace(f, row);
  }
  return PerceptronModel(std::move(averaged), static_cast<std::uint32_t>(epochs));
}

double token_accuracy(const PerceptronModel& model, const GoldCorpus& corpus) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const Document& doc : corpus.documents()) {
    auto gold = bio_encode(doc, corpus.gold(doc.id()));
    auto predicted = model.predict_tags(doc);
    for (std::size_t i = 0; i < gold.size(); ++i) {
      ++total;
      if (gold[i] == predicted[i]) ++correct;
    }
  }
  return total == 0 ? 1.0 : static_cast<double>(correct) /
                                static_cast<double>(total);
}

}  // namespace encon
