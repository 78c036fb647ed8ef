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

// Model file layout, all integers big-endian:
//   "ENSM"                     4-byte magic
//   u32   format version       (currently 1)
//   u32   epochs trained
//   u32   label count          always the 7 BIO tags, in fixed order
//   per label: u32 length + bytes
//   u32   entry count
//   per entry, sorted by (feature bytes, tag index):
//     u32 feature length + bytes
//     u8  tag index
//     u64 IEEE-754 double bits
// Zero weights are not stored; they cannot change any score.

#include <bit>
#include <cstring>

#include "encon/perceptron.hpp"

namespace encon {

namespace {

constexpr char kMagic[4] = {'E', 'N', 'S', 'M'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  put_u32(out, static_cast<std::uint32_t>(v >> 32));
  put_u32(out, static_cast<std::uint32_t>(v));
}

void put_string(std::vector<std::uint8_t>& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.insert(out.end(), s.begin(), s.end());
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = (std::uint32_t(bytes_[pos_]) << 24) |
                      (std::uint32_t(bytes_[pos_ + 1]) << 16) |
                      (std::uint32_t(bytes_[pos_ + 2]) << 8) |
                      std::uint32_t(bytes_[pos_ + 3]);
    pos_ += 4;
    return v;
  }

  std::uint64_t u64() {
    std::uint64_t hi = u32();
    return (hi << 32) | u32();
  }

  std::string string() {
    std::uint32_t len = u32();
    need(len);
    std::string s(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_),
                  bytes_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
    pos_ += len;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) {
    if (pos_ + n > bytes_.size())
      throw ModelFormatError("truncated model file");
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> PerceptronModel::save() const {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u32(out, kFormatVersion);
  put_u32(out, epochs_);

  put_u32(out, static_cast<std::uint32_t>(kTagCount));
  for (BIOTag t : kAllTags) put_string(out, to_string(t));

  std::size_t entries = 0;
  for (const auto& [f, row] : weights_)
    for (double w : row)
      if (w != 0.0) ++entries;
  put_u32(out, static_cast<std::uint32_t>(entries));

  // weights_ is an ordered map, so triples come out sorted by feature and
  // then tag index without extra work.
  for (const auto& [f, row] : weights_) {
    for (std::size_t t = 0; t < kTagCount; ++t) {
      if (row[t] == 0.0) continue;
      put_string(out, f);
      out.push_back(static_cast<std::uint8_t>(t));
      put_u64(out, std::bit_cast<std::uint64_t>(row[t]));
    }
  }
  return out;
}

PerceptronModel PerceptronModel::load(const std::vector<std::uint8_t>& bytes) {
  Reader in(bytes);
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw ModelFormatError("bad magic: not a model file");
  (void)in.u32();  // magic, already checked

  std::uint32_t version = in.u32();
  if (version != kFormatVersion)
    throw ModelFormatError("unsupported model format version " +
                           std::to_string(version));
  std::uint32_t epochs = in.u32();

  std::uint32_t label_count = in.u32();
  if (label_count != kTagCount)
    throw ModelFormatError("unexpected label count " +
                           std::to_string(label_count));
  for (BIOTag t : kAllTags) {
    std::string label = in.string();
    if (label != to_string(t))
      throw ModelFormatError("unexpected label \"" + label + "\"");
  }

  Weights weights;
  std::uint32_t entries = in.u32();
  for (std::uint32_t i = 0; i < entries; ++i) {
    std::string feature = in.string();
    std::uint8_t tag = in.u8();
    if (tag >= kTagCount)
      throw ModelFormatError("tag index " + std::to_string(tag) +
                             " out of range");
    double w = std::bit_cast<double>(in.u64());
    weights[feature][tag] = w;
  }
  if (!in.done()) throw ModelFormatError("trailing bytes after model data");
  return PerceptronModel(std::move(weights), epochs);
}

}  // namespace encon
