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

#include "crsprobe/scoring/http_scorer.h"

#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "crsprobe/common/error.h"
#include "crsprobe/scoring/ranking.h"

namespace crsprobe::scoring {
namespace {

using nlohmann::json;

json ParseBody(const std::string& body, const std::string& path) {
  json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  Require(!doc.is_discarded() && doc.is_object(), ErrorKind::kTransport,
          path + ": response is not a JSON object");
  return doc;
}

const json& Field(const json& doc, const char* name, const std::string& path) {
  auto it = doc.find(name);
  Require(it != doc.end(), ErrorKind::kTransport,
          path + ": response lacks \"" + name + "\"");
  return *it;
}

std::vector<double> Reals(const json& arr, size_t expected, const std::string& path) {
  Require(arr.is_array() && arr.size() == expected, ErrorKind::kTransport,
          path + ": expected an array of " + std::to_string(expected) + " numbers");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const json& v : arr) {
    Require(v.is_number(), ErrorKind::kTransport, path + ": non-numeric score");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string ErrorMessage(const httplib::Result& res) {
  json doc = json::parse(res->body, nullptr, false);
  if (!doc.is_discarded() && doc.is_object() && doc.contains("error") &&
      doc["error"].is_string()) {
    return doc["error"].get<std::string>();
  }
  return res->body.substr(0, 200);
}

}  // namespace

HttpScorer::HttpScorer(HttpScorerOptions options) : options_(std::move(options)) {
  const std::string& ep = options_.endpoint;
  Require(ep.rfind("http://", 0) == 0, ErrorKind::kConfig,
          "scorer endpoint must start with http://: " + ep);
  size_t slash = ep.find('/', 7);
  scheme_host_port_ = ep.substr(0, slash);
  if (slash != std::string::npos) {
    prefix_ = ep.substr(slash);
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  }
  Require(scheme_host_port_.size() > 7, ErrorKind::kConfig, "scorer endpoint has no host");
}

std::string HttpScorer::Get(const std::string& path) { return Send(path, nullptr); }

std::string HttpScorer::Post(const std::string& path, const std::string& body) {
  return Send(path, &body);
}

std::string HttpScorer::Send(const std::string& path, const std::string* body) {
  const std::string full = prefix_ + path;
  auto backoff = options_.initial_backoff;
  std::string last_error;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(scheme_host_port_);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
    const auto usecs =
        std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    httplib::Result res = body == nullptr ? client.Get(full)
                                          : client.Post(full, *body, "application/json");
    if (!res) {
      last_error = full + ": " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) return res->body;
    last_error = full + ": HTTP " + std::to_string(res->status) + ": " + ErrorMessage(res);
    if (res->status < 500) Fail(ErrorKind::kTransport, last_error);
  }
  Fail(ErrorKind::kTransport,
       last_error + " (after " + std::to_string(options_.max_retries) + " retries)");
}

ScorerInfo HttpScorer::Info() {
  {
    std::lock_guard lock(mu_);
    if (info_) return *info_;
  }
  const std::string path = "/v1/meta";
  json doc = ParseBody(Get(path), path);
  ScorerInfo info;
  try {
    info.model = Field(doc, "model", path).get<std::string>();
    info.mask_token = Field(doc, "mask_token", path).get<std::string>();
    info.sep_token = Field(doc, "sep_token", path).get<std::string>();
    info.max_tokens = Field(doc, "max_tokens", path).get<size_t>();
  } catch (const json::exception& e) {
    Fail(ErrorKind::kTransport, path + ": " + e.what());
  }
  Require(!info.mask_token.empty(), ErrorKind::kTransport, path + ": empty mask token");
  std::lock_guard lock(mu_);
  info_ = info;
  return info;
}

std::vector<TokenRanking> HttpScorer::MaskedTopK(std::span<const MaskedPrompt> prompts,
                                                 size_t top_k) {
  if (prompts.empty()) return {};
  const std::string path = "/v1/mlm";
  json req = {{"prompts", json::array()}, {"top_k", top_k}};
  for (const MaskedPrompt& p : prompts) req["prompts"].push_back(p.text);
  json doc = ParseBody(Post(path, req.dump()), path);
  const json& results = Field(doc, "results", path);
  Require(results.is_array() && results.size() == prompts.size(), ErrorKind::kTransport,
          path + ": result count does not match prompt count");
  std::vector<TokenRanking> out;
  for (const json& r : results) {
    TokenRanking ranking;
    const json& tokens = Field(r, "tokens", path);
    Require(tokens.is_array(), ErrorKind::kTransport, path + ": tokens is not an array");
    for (const json& t : tokens) {
      Require(t.is_string(), ErrorKind::kTransport, path + ": non-string token");
      ranking.tokens.push_back(t.get<std::string>());
    }
    ranking.scores = Reals(Field(r, "scores", path), ranking.tokens.size(), path);
    out.push_back(std::move(ranking));
  }
  return out;
}

std::vector<CandidateScores> HttpScorer::NextSentence(std::span<const CandidateQuery> queries) {
  std::vector<CandidateScores> out(queries.size());
  json req = {{"pairs", json::array()}};
  size_t total = 0;
  for (const CandidateQuery& q : queries) {
    Require(q.context.size() == 1, ErrorKind::kPrecondition,
            q.key + ": next-sentence scoring takes a single query sentence");
    for (const std::string& c : q.candidates) {
      req["pairs"].push_back({{"a", q.context.front()}, {"b", c}});
      ++total;
    }
  }
  if (total == 0) return out;
  const std::string path = "/v1/nsp";
  json doc = ParseBody(Post(path, req.dump()), path);
  std::vector<double> scores = Reals(Field(doc, "scores", path), total, path);
  std::vector<bool> truncated(total, false);
  if (auto it = doc.find("truncated"); it != doc.end()) {
    Require(it->is_array() && it->size() == total, ErrorKind::kTransport,
            path + ": truncated flags do not match pair count");
    for (size_t i = 0; i < total; ++i) truncated[i] = (*it)[i].get<bool>();
  }
  size_t pos = 0;
  for (size_t q = 0; q < queries.size(); ++q) {
    for (size_t c = 0; c < queries[q].candidates.size(); ++c, ++pos) {
      out[q].scores.push_back(scores[pos]);
      out[q].truncated = out[q].truncated || truncated[pos];
    }
  }
  return out;
}

std::vector<SentenceVector> HttpScorer::Embed(std::span<const std::string> sentences,
                                              Pooling pooling) {
  if (sentences.empty()) return {};
  const std::string path = "/v1/embed";
  json req = {{"sentences", json::array()}, {"pooling", PoolingName(pooling)}};
  for (const std::string& s : sentences) req["sentences"].push_back(s);
  json doc = ParseBody(Post(path, req.dump()), path);
  const json& vectors = Field(doc, "vectors", path);
  Require(vectors.is_array() && vectors.size() == sentences.size(), ErrorKind::kTransport,
          path + ": vector count does not match sentence count");
  std::vector<SentenceVector> out;
  for (const json& v : vectors) {
    Require(v.is_array(), ErrorKind::kTransport, path + ": vector is not an array");
    SentenceVector sv;
    sv.pooling = pooling;
    sv.values = Reals(v, v.size(), path);
    Require(out.empty() || out.front().values.size() == sv.values.size(),
            ErrorKind::kTransport, path + ": vectors differ in dimension");
    out.push_back(std::move(sv));
  }
  return out;
}

std::vector<CandidateScores> HttpScorer::RankResponses(std::span<const CandidateQuery> queries) {
  const ScorerInfo info = Info();
  const std::string path = "/v1/rank";
  std::vector<CandidateScores> out;
  for (const CandidateQuery& q : queries) {
    TruncatedContext ctx = TruncateContext(q.context, q.candidates, info.max_tokens);
    json req = {{"context", ctx.context}, {"candidates", q.candidates}};
    json doc = ParseBody(Post(path, req.dump()), path);
    CandidateScores s;
    s.scores = Reals(Field(doc, "scores", path), q.candidates.size(), path);
    s.truncated = ctx.truncated;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace crsprobe::scoring
