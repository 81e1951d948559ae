// Copyright 2026 The stance-scope Authors.
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

#include "stance_scope/entailment.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "stance_scope/score_cache.hpp"

namespace stance_scope {

HypothesisText::HypothesisText(std::string text) : text_(std::move(text)) {
  if (text_.empty()) throw ConfigError("hypothesis text is empty");
  char last = text_.back();
  if (last != '.' && last != '!' && last != '?') {
    throw ConfigError("hypothesis '" + text_ + "' must end with sentence-final punctuation");
  }
}

EntailmentScore::EntailmentScore(double value) : value_(value) {
  if (std::isnan(value) || value < 0.0 || value > 1.0) {
    throw ProtocolError("entailment score out of [0,1]: " + std::to_string(value), {});
  }
}

std::string_view to_string(BackendKind kind) {
  return kind == BackendKind::kRemote ? "remote" : "lexical";
}

BackendKind parse_backend_kind(std::string_view name) {
  if (name == "lexical" || name == "lexical_oracle") return BackendKind::kLexicalOracle;
  if (name == "remote") return BackendKind::kRemote;
  throw ConfigError("unknown backend kind '" + std::string(name) + "'");
}

void BackendDescriptor::validate() const {
  if (kind == BackendKind::kRemote && (!endpoint || endpoint->empty())) {
    throw ConfigError("remote backend requires an endpoint");
  }
  if (batch_size == 0) throw ConfigError("backend batch_size must be positive");
  if (max_attempts < 1) throw ConfigError("backend max_attempts must be at least 1");
}

std::string BackendDescriptor::effective_model_name() const {
  if (model_name && !model_name->empty()) return *model_name;
  return std::string(kind == BackendKind::kRemote ? kDefaultRemoteModel : kLexicalOracleModel);
}

std::unique_ptr<EntailmentBackend> make_backend(const BackendDescriptor& descriptor,
                                                OracleLexicon lexicon) {
  descriptor.validate();
  if (descriptor.kind == BackendKind::kRemote) return std::make_unique<RemoteBackend>(descriptor);
  return std::make_unique<LexicalOracleBackend>(std::move(lexicon));
}

std::string cache_key(std::string_view premise, std::string_view hypothesis,
                      std::string_view model_name) {
  std::string buffer;
  buffer.reserve(premise.size() + hypothesis.size() + model_name.size() + 24);
  for (std::string_view field : {model_name, premise, hypothesis}) {
    auto n = static_cast<std::uint64_t>(field.size());
    for (int i = 0; i < 8; ++i) buffer.push_back(static_cast<char>((n >> (8 * i)) & 0xFF));
    buffer.append(field);
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  if (EVP_Digest(buffer.data(), buffer.size(), digest, &digest_len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * digest_len);
  for (unsigned int i = 0; i < digest_len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

Entailer::Entailer(std::shared_ptr<EntailmentBackend> backend, std::shared_ptr<ScoreCache> cache,
                   std::size_t batch_size)
    : backend_(std::move(backend)),
      cache_(cache ? std::move(cache) : std::make_shared<ScoreCache>()),
      batch_size_(batch_size == 0 ? 1 : batch_size),
      model_name_(backend_->model_name()) {}

std::vector<EntailmentScore> Entailer::entail(std::string_view premise,
                                              std::span<const HypothesisText> hypotheses) {
  if (hypotheses.empty()) throw ConfigError("entail requires at least one hypothesis");
  std::vector<PremiseHypothesis> pairs;
  pairs.reserve(hypotheses.size());
  for (const auto& h : hypotheses) pairs.push_back({std::string(premise), h.str()});
  return entail_pairs(pairs);
}

std::vector<EntailmentScore> Entailer::entail_pairs(std::span<const PremiseHypothesis> pairs) {
  std::vector<std::optional<double>> scores(pairs.size());
  std::vector<std::string> keys(pairs.size());

  // Unique missing keys in first-seen order -> indices waiting on them.
  std::vector<std::size_t> missing;
  std::unordered_map<std::string, std::vector<std::size_t>> waiting;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    keys[i] = cache_key(pairs[i].premise, pairs[i].hypothesis, model_name_);
    if (auto hit = cache_->lookup(keys[i])) {
      scores[i] = *hit;
      cache_hits_.fetch_add(1);
      continue;
    }
    auto [it, inserted] = waiting.try_emplace(keys[i]);
    if (inserted) missing.push_back(i);
    it->second.push_back(i);
  }

  for (std::size_t begin = 0; begin < missing.size(); begin += batch_size_) {
    std::size_t end = std::min(missing.size(), begin + batch_size_);
    std::vector<PremiseHypothesis> chunk;
    chunk.reserve(end - begin);
    for (std::size_t k = begin; k < end; ++k) chunk.push_back(pairs[missing[k]]);

    std::vector<EntailmentScore> fresh = backend_->score_batch(chunk);
    if (fresh.size() != chunk.size()) {
      throw ProtocolError("backend returned " + std::to_string(fresh.size()) + " scores for " +
                              std::to_string(chunk.size()) + " pairs",
                          chunk);
    }
    backend_pairs_.fetch_add(chunk.size());

    std::vector<std::pair<std::string, double>> entries;
    entries.reserve(chunk.size());
    for (std::size_t k = begin; k < end; ++k) {
      double value = fresh[k - begin].value();
      const std::string& key = keys[missing[k]];
      entries.emplace_back(key, value);
      for (std::size_t idx : waiting[key]) scores[idx] = value;
    }
    cache_->insert_many(entries);
  }

  std::vector<EntailmentScore> out;
  out.reserve(scores.size());
  for (const auto& s : scores) out.emplace_back(*s);
  return out;
}

}  // namespace stance_scope
