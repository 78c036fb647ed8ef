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
#include <optional>
#include <string>
#include <vector>

#include "encon/annotation.hpp"
#include "encon/document.hpp"

namespace encon {

/// Per-token Begin/Inside/Outside labels. The enumeration order doubles as
/// the decode tie-break order: O first, so an untrained model stays silent.
enum class BIOTag : std::uint8_t {
  O = 0,
  BProblem,
  IProblem,
  BTest,
  ITest,
  BTreatment,
  ITreatment,
};

inline constexpr std::size_t kTagCount = 7;

inline constexpr std::array<BIOTag, kTagCount> kAllTags = {
    BIOTag::O,     BIOTag::BProblem,   BIOTag::IProblem,  BIOTag::BTest,
    BIOTag::ITest, BIOTag::BTreatment, BIOTag::ITreatment};

const std::string& to_string(BIOTag tag);
std::optional<BIOTag> bio_tag_from(std::string_view s);

constexpr bool is_begin(BIOTag t) {
  return t == BIOTag::BProblem || t == BIOTag::BTest || t == BIOTag::BTreatment;
}
constexpr bool is_inside(BIOTag t) {
  return t == BIOTag::IProblem || t == BIOTag::ITest || t == BIOTag::ITreatment;
}

/// Concept type of a B or I tag; O has none.
std::optional<ConceptType> tag_type(BIOTag t);
BIOTag begin_tag(ConceptType t);
BIOTag inside_tag(ConceptType t);

/// One tag per token in document order: B-type on an annotation's first
/// token, I-type on the rest, O elsewhere. Overlapping annotations are not
/// representable and raise EncodingError naming the pair. Encoding is only
/// inverse to decoding for spans within one line: a span crossing a line
/// break encodes normally but decodes as one annotation per line, because
/// decode runs never cross lines.
std::vector<BIOTag> bio_encode(const Document& doc,
                               const AnnotationSet& gold);

/// Turns maximal B-t (I-t)* runs back into annotations. An I-t without a
/// compatible predecessor (document start, after O, or after another type)
/// is repaired to B-t, and a line break always terminates the current run.
/// Tag count must equal the document's token count.
AnnotationSet bio_decode(const Document& doc, const std::vector<BIOTag>& tags,
                         std::string source);

}  // namespace encon
