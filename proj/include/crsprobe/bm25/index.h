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

#ifndef CRSPROBE_BM25_INDEX_H_
#define CRSPROBE_BM25_INDEX_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace crsprobe::bm25 {

struct Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct Posting {
  uint32_t doc = 0;  // index into InvertedIndex::doc_ids()
  uint32_t tf = 0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;
};

// ln(1 + (N - df + 0.5) / (df + 0.5)); never negative.
double Idf(uint64_t doc_count, uint64_t df);

// Saturated term weight of one query term occurrence.
double TermWeight(double idf, uint32_t tf, uint32_t doc_length, double avg_doc_length,
                  const Params& params);

// Immutable after Build; safe for concurrent queries.
class InvertedIndex {
 public:
  static constexpr uint32_t kFormatVersion = 1;

  // doc ids must be unique (build error otherwise). Documents are indexed in
  // ascending doc_id order so postings are sorted by doc_id.
  static InvertedIndex Build(std::vector<std::pair<std::string, std::string>> docs,
                             Params params = {});

  // Sum over query tokens (repeats included) of the term weights for doc_id.
  // Throws a lookup error for an unknown doc_id.
  double Score(std::span<const std::string> query_tokens, std::string_view doc_id) const;

  // Top results with score > 0, descending score, ties by doc_id ascending.
  std::vector<ScoredDoc> Retrieve(std::string_view query_text, size_t top_n) const;
  std::vector<ScoredDoc> RetrieveTokens(std::span<const std::string> query_tokens,
                                        size_t top_n) const;

  const Params& params() const { return params_; }
  void set_params(const Params& params) { params_ = params; }
  size_t doc_count() const { return doc_ids_.size(); }
  double avg_doc_length() const { return avg_doc_length_; }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  const std::vector<uint32_t>& doc_lengths() const { return doc_lengths_; }
  std::optional<size_t> DocIndex(std::string_view doc_id) const;
  std::span<const Posting> Postings(const std::string& term) const;
  size_t term_count() const { return postings_.size(); }

  // Binary encoding with a magic string and version tag. Byte-identical for
  // identical indexes.
  std::string Serialize() const;
  static InvertedIndex Deserialize(std::string_view bytes);
  void Save(const std::filesystem::path& path) const;
  static InvertedIndex Load(const std::filesystem::path& path);

  friend bool operator==(const InvertedIndex& a, const InvertedIndex& b);

 private:
  Params params_;
  std::vector<std::string> doc_ids_;
  std::vector<uint32_t> doc_lengths_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  double avg_doc_length_ = 0.0;
};

}  // namespace crsprobe::bm25

#endif  // CRSPROBE_BM25_INDEX_H_
