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

#ifndef STANCE_SCOPE_ENTAILMENT_HPP_
#define STANCE_SCOPE_ENTAILMENT_HPP_

#include <atomic>
#include <chrono>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stance_scope/errors.hpp"

namespace stance_scope {

class ScoreCache;

// A complete declarative hypothesis sentence.
class HypothesisText {
 public:
  // Throws ConfigError unless non-empty and ending in '.', '!' or '?'.
  explicit HypothesisText(std::string text);

  const std::string& str() const { return text_; }
  auto operator<=>(const HypothesisText&) const = default;

 private:
  std::string text_;
};

// Entailment probability in [0, 1]; NaN is rejected.
class EntailmentScore {
 public:
  explicit EntailmentScore(double value);

  double value() const { return value_; }
  auto operator<=>(const EntailmentScore&) const = default;

 private:
  double value_;
};

struct PremiseHypothesis {
  std::string premise;
  std::string hypothesis;

  auto operator<=>(const PremiseHypothesis&) const = default;
};

class BackendFailure : public BackendError {
 public:
  BackendFailure(const std::string& what, std::vector<PremiseHypothesis> batch)
      : BackendError(what), batch_(std::move(batch)) {}

  // The premise/hypothesis batch that could not be scored.
  const std::vector<PremiseHypothesis>& batch() const { return batch_; }

 private:
  std::vector<PremiseHypothesis> batch_;
};

class BackendUnavailable : public BackendFailure {
 public:
  using BackendFailure::BackendFailure;
};

class ProtocolError : public BackendFailure {
 public:
  using BackendFailure::BackendFailure;
};

class UnknownHypothesis : public Error {
 public:
  using Error::Error;
};

enum class BackendKind { kLexicalOracle, kRemote };

std::string_view to_string(BackendKind kind);
BackendKind parse_backend_kind(std::string_view name);

struct BackendDescriptor {
  BackendKind kind = BackendKind::kLexicalOracle;
  std::optional<std::string> endpoint;  // base URL, remote only
  std::optional<std::string> model_name;
  std::size_t batch_size = 16;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
  std::chrono::milliseconds timeout{60000};

  // Throws ConfigError: remote requires an endpoint, batch_size >= 1,
  // max_attempts >= 1.
  void validate() const;
  // model_name, or the backend's default.
  std::string effective_model_name() const;
};

inline constexpr std::string_view kLexicalOracleModel = "lexical-oracle";
inline constexpr std::string_view kDefaultRemoteModel = "facebook/bart-large-mnli";

// Scores premise/hypothesis pairs. Implementations must tolerate
// concurrent calls and return exactly one score per input pair.
class EntailmentBackend {
 public:
  virtual ~EntailmentBackend() = default;

  virtual std::string model_name() const = 0;
  virtual std::vector<EntailmentScore> score_batch(std::span<const PremiseHypothesis> pairs) = 0;
};

// ---------------------------------------------------------------------------
// Lexical oracle: a deterministic stand-in for the NLI model.

struct OracleEntry {
  std::vector<std::string> subject_keywords;
  std::vector<std::string> subject_synonyms;
  // Empty means the hypothesis has no directional part (topic hypotheses):
  // the subject alone decides.
  std::vector<std::string> expression_keywords;
};

class OracleLexicon {
 public:
  void add(const std::string& hypothesis, OracleEntry entry);
  const OracleEntry* find(std::string_view hypothesis) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, OracleEntry, std::less<>> entries_;
};

inline constexpr double kOracleFullMatch = 1.0;
inline constexpr double kOracleSynonymMatch = 0.97;

// Lower-cases and strips a small set of inflectional suffixes.
std::string oracle_stem(std::string_view word);

// 1.0 when the premise mentions a subject keyword and an expression keyword
// of the hypothesis, 0.97 when the subject is only present as a synonym,
// 0.0 otherwise. Keywords may span several words. Throws UnknownHypothesis.
EntailmentScore lexical_oracle_score(std::string_view premise, std::string_view hypothesis,
                                     const OracleLexicon& lexicon);

class LexicalOracleBackend final : public EntailmentBackend {
 public:
  explicit LexicalOracleBackend(OracleLexicon lexicon) : lexicon_(std::move(lexicon)) {}

  std::string model_name() const override { return std::string(kLexicalOracleModel); }
  std::vector<EntailmentScore> score_batch(std::span<const PremiseHypothesis> pairs) override;

 private:
  OracleLexicon lexicon_;
};

// ---------------------------------------------------------------------------
// Remote inference service client (POST /v1/entail, GET /v1/health).

class RemoteBackend final : public EntailmentBackend {
 public:
  explicit RemoteBackend(BackendDescriptor descriptor);

  std::string model_name() const override;
  // Splits into requests of at most batch_size pairs. Connection failures
  // and 5xx responses are retried with exponential backoff; exhaustion
  // throws BackendUnavailable, malformed replies throw ProtocolError.
  std::vector<EntailmentScore> score_batch(std::span<const PremiseHypothesis> pairs) override;

  // Returns the model reported by /v1/health; throws BackendUnavailable.
  std::string health() const;

  std::size_t requests_sent() const { return requests_sent_.load(); }

 private:
  std::vector<EntailmentScore> send_once(std::span<const PremiseHypothesis> pairs);

  BackendDescriptor descriptor_;
  std::string base_url_;
  std::string path_prefix_;
  std::atomic<std::size_t> requests_sent_{0};
};

std::unique_ptr<EntailmentBackend> make_backend(const BackendDescriptor& descriptor,
                                                OracleLexicon lexicon);

// ---------------------------------------------------------------------------

// SHA-256 over length-prefixed fields, hex encoded. Stable across runs and
// platforms; no two distinct triples share an encoding.
std::string cache_key(std::string_view premise, std::string_view hypothesis,
                      std::string_view model_name);

// Front door for scoring: consults the cache, sends only missing pairs to
// the backend in batch_size chunks, and records every new score before
// returning. Safe to share between threads.
class Entailer {
 public:
  Entailer(std::shared_ptr<EntailmentBackend> backend, std::shared_ptr<ScoreCache> cache,
           std::size_t batch_size);

  // One score per hypothesis, order-aligned. Throws ConfigError when
  // hypotheses is empty.
  std::vector<EntailmentScore> entail(std::string_view premise,
                                      std::span<const HypothesisText> hypotheses);
  std::vector<EntailmentScore> entail_pairs(std::span<const PremiseHypothesis> pairs);

  const std::string& model_name() const { return model_name_; }
  std::size_t backend_pairs() const { return backend_pairs_.load(); }
  std::size_t cache_hits() const { return cache_hits_.load(); }

 private:
  std::shared_ptr<EntailmentBackend> backend_;
  std::shared_ptr<ScoreCache> cache_;
  std::size_t batch_size_;
  std::string model_name_;
  std::atomic<std::size_t> backend_pairs_{0};
  std::atomic<std::size_t> cache_hits_{0};
};

}  // namespace stance_scope

#endif  // STANCE_SCOPE_ENTAILMENT_HPP_
