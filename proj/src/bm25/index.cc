// Copyright 2026 The crsprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crsprobe/bm25/index.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "crsprobe/bm25/tokenizer.h"
#include "crsprobe/common/error.h"
#include "crsprobe/common/io.h"

namespace crsprobe::bm25 {
namespace {

static_assert(std::endian::native == std::endian::little,
              "index serialization assumes a little-endian host");

constexpr std::string_view kMagic = "CRSBM25\n";

class Writer {
 public:
  template <typename T>
  void Put(T value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void PutString(std::string_view s) {
    Put<uint32_t>(static_cast<uint32_t>(s.size()));
    out_.append(s);
  }
  void PutRaw(std::string_view s) { out_.append(s); }
  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  template <typename T>
  T Get() {
    Need(sizeof(T));
    T value;
    std::memcpy(&value, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }
  std::string GetString() {
    const auto n = Get<uint32_t>();
    Need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::string_view GetRaw(size_t n) {
    Need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool AtEnd() const { return pos_ == in_.size(); }

 private:
  void Need(size_t n) const {
    if (in_.size() - pos_ < n) Fail(ErrorKind::kData, "bm25 index: truncated file");
  }
  std::string_view in_;
  size_t pos_ = 0;
};

}  // namespace

double Idf(uint64_t doc_count, uint64_t df) {
  const double n = static_cast<double>(doc_count);
  const double d = static_cast<double>(df);
  return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

double TermWeight(double idf, uint32_t tf, uint32_t doc_length, double avg_doc_length,
                  const Params& params) {
  if (tf == 0) return 0.0;
  const double ratio = avg_doc_length > 0.0 ? doc_length / avg_doc_length : 0.0;
  const double norm = params.k1 * (1.0 - params.b + params.b * ratio);
  return idf * (tf * (params.k1 + 1.0)) / (tf + norm);
}

InvertedIndex InvertedIndex::Build(std::vector<std::pair<std::string, std::string>> docs,
                                   Params params) {
  std::sort(docs.begin(), docs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 1; i < docs.size(); ++i) {
    if (docs[i].first == docs[i - 1].first) {
      Fail(ErrorKind::kData, "bm25 index: duplicate doc_id " + docs[i].first);
    }
  }
  InvertedIndex index;
  index.params_ = params;
  index.doc_ids_.reserve(docs.size());
  index.doc_lengths_.reserve(docs.size());
  uint64_t total_length = 0;
  std::unordered_map<std::string, uint32_t> counts;
  for (size_t d = 0; d < docs.size(); ++d) {
    std::vector<std::string> tokens = Tokenize(docs[d].second);
    counts.clear();
    for (std::string& t : tokens) ++counts[std::move(t)];
    for (auto& [term, tf] : counts) {
      index.postings_[term].push_back(Posting{static_cast<uint32_t>(d), tf});
    }
    index.doc_ids_.push_back(std::move(docs[d].first));
    index.doc_lengths_.push_back(static_cast<uint32_t>(tokens.size()));
    total_length += tokens.size();
  }
  index.avg_doc_length_ =
      docs.empty() ? 0.0 : static_cast<double>(total_length) / static_cast<double>(docs.size());
  return index;
}

std::optional<size_t> InvertedIndex::DocIndex(std::string_view doc_id) const {
  auto it = std::lower_bound(doc_ids_.begin(), doc_ids_.end(), doc_id);
  if (it == doc_ids_.end() || *it != doc_id) return std::nullopt;
  return static_cast<size_t>(it - doc_ids_.begin());
}

std::span<const Posting> InvertedIndex::Postings(const std::string& term) const {
  auto it = postings_.find(term);
  if (it == postings_.end()) return {};
  return it->second;
}

double InvertedIndex::Score(std::span<const std::string> query_tokens,
                            std::string_view doc_id) const {
  auto doc = DocIndex(doc_id);
  if (!doc) Fail(ErrorKind::kLookup, "bm25 index: unknown doc_id " + std::string(doc_id));
  double score = 0.0;
  for (const std::string& term : query_tokens) {
    auto postings = Postings(term);
    auto it = std::lower_bound(postings.begin(), postings.end(), *doc,
                               [](const Posting& p, size_t d) { return p.doc < d; });
    if (it == postings.end() || it->doc != *doc) continue;
    score += TermWeight(Idf(doc_count(), postings.size()), it->tf, doc_lengths_[*doc],
                        avg_doc_length_, params_);
  }
  return score;
}

std::vector<ScoredDoc> InvertedIndex::Retrieve(std::string_view query_text,
                                               size_t top_n) const {
  std::vector<std::string> tokens = Tokenize(query_text);
  return RetrieveTokens(tokens, top_n);
}

std::vector<ScoredDoc> InvertedIndex::RetrieveTokens(std::span<const std::string> query_tokens,
                                                     size_t top_n) const {
  Require(top_n >= 1, ErrorKind::kPrecondition, "bm25 retrieve: top_n must be >= 1");
  std::vector<double> acc(doc_count(), 0.0);
  std::vector<uint32_t> touched;
  // Accumulate term by term in query order so sums match Score() exactly.
  for (const std::string& term : query_tokens) {
    auto postings = Postings(term);
    if (postings.empty()) continue;
    const double idf = Idf(doc_count(), postings.size());
    for (const Posting& p : postings) {
      if (acc[p.doc] == 0.0) touched.push_back(p.doc);
      acc[p.doc] += TermWeight(idf, p.tf, doc_lengths_[p.doc], avg_doc_length_, params_);
    }
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  std::erase_if(touched, [&](uint32_t d) { return !(acc[d] > 0.0); });

  auto better = [&](uint32_t a, uint32_t b) {
    if (acc[a] != acc[b]) return acc[a] > acc[b];
    return a < b;
  };
  const size_t n = std::min(top_n, touched.size());
  std::partial_sort(touched.begin(), touched.begin() + static_cast<std::ptrdiff_t>(n),
                    touched.end(), better);
  std::vector<ScoredDoc> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back({doc_ids_[touched[i]], acc[touched[i]]});
  return out;
}

std::string InvertedIndex::Serialize() const {
  Writer w;
  w.PutRaw(kMagic);
  w.Put<uint32_t>(kFormatVersion);
  w.Put<double>(params_.k1);
  w.Put<double>(params_.b);
  w.Put<uint64_t>(doc_ids_.size());
  for (size_t d = 0; d < doc_ids_.size(); ++d) {
    w.PutString(doc_ids_[d]);
    w.Put<uint32_t>(doc_lengths_[d]);
  }
  std::vector<const std::string*> terms;
  terms.reserve(postings_.size());
  for (const auto& [term, list] : postings_) terms.push_back(&term);
  std::sort(terms.begin(), terms.end(), [](auto* a, auto* b) { return *a < *b; });
  w.Put<uint64_t>(terms.size());
  for (const std::string* term : terms) {
    const auto& list = postings_.at(*term);
    w.PutString(*term);
    w.Put<uint64_t>(list.size());
    for (const Posting& p : list) {
      w.Put<uint32_t>(p.doc);
      w.Put<uint32_t>(p.tf);
    }
  }
  return w.Take();
}

InvertedIndex InvertedIndex::Deserialize(std::string_view bytes) {
  Reader r(bytes);
  if (r.GetRaw(kMagic.size()) != kMagic) Fail(ErrorKind::kData, "bm25 index: bad magic");
  const auto version = r.Get<uint32_t>();
  if (version != kFormatVersion) {
    Fail(ErrorKind::kData, "bm25 index: unsupported version " + std::to_string(version));
  }
  InvertedIndex index;
  index.params_.k1 = r.Get<double>();
  index.params_.b = r.Get<double>();
  const auto docs = r.Get<uint64_t>();
  uint64_t total_length = 0;
  for (uint64_t d = 0; d < docs; ++d) {
    index.doc_ids_.push_back(r.GetString());
    index.doc_lengths_.push_back(r.Get<uint32_t>());
    total_length += index.doc_lengths_.back();
  }
  index.avg_doc_length_ =
      docs == 0 ? 0.0 : static_cast<double>(total_length) / static_cast<double>(docs);
  const auto terms = r.Get<uint64_t>();
  for (uint64_t t = 0; t < terms; ++t) {
    std::string term = r.GetString();
    const auto n = r.Get<uint64_t>();
    std::vector<Posting> list;
    list.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
      Posting p;
      p.doc = r.Get<uint32_t>();
      p.tf = r.Get<uint32_t>();
      if (p.doc >= docs) Fail(ErrorKind::kData, "bm25 index: posting out of range");
      list.push_back(p);
    }
    index.postings_.emplace(std::move(term), std::move(list));
  }
  if (!r.AtEnd()) Fail(ErrorKind::kData, "bm25 index: trailing bytes");
  return index;
}

void InvertedIndex::Save(const std::filesystem::path& path) const {
  WriteArtifact(path, Serialize());
}

InvertedIndex InvertedIndex::Load(const std::filesystem::path& path) {
  return Deserialize(ReadFile(path));
}

bool operator==(const InvertedIndex& a, const InvertedIndex& b) {
  return a.params_.k1 == b.params_.k1 && a.params_.b == b.params_.b &&
         a.doc_ids_ == b.doc_ids_ && a.doc_lengths_ == b.doc_lengths_ &&
         a.postings_ == b.postings_ && a.avg_doc_length_ == b.avg_doc_length_;
}

}  // namespace crsprobe::bm25
