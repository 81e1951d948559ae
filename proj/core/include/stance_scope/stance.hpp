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

#ifndef STANCE_SCOPE_STANCE_HPP_
#define STANCE_SCOPE_STANCE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stance_scope/corpus.hpp"
#include "stance_scope/entailment.hpp"
#include "stance_scope/topics.hpp"

namespace stance_scope {

enum class Direction { kUp, kDown };

std::string_view to_string(Direction direction);

struct DirectionalExpression {
  std::string expression;
  Direction direction = Direction::kUp;
  HypothesisText hypothesis;
};

class InvalidCategoryConfig : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DuplicateHypothesis : public InvalidCategoryConfig {
 public:
  using InvalidCategoryConfig::InvalidCategoryConfig;
};

// One stance category c: the topic that gates it, the subject used to
// build hypothesis sentences, and the upward / downward expression sets.
struct CategoryConfig {
  std::string category;  // Topic::name
  std::string subject_phrase;
  std::vector<std::string> upward_expressions;
  std::vector<std::string> downward_expressions;

  // Both sets non-empty, no expression in both, nothing renders twice.
  void validate() const;
};

std::vector<CategoryConfig> default_categories();

// "<Subject phrase> <expression>." per expression, upward first. The
// subject is capitalized and the expression lower-cased.
std::vector<DirectionalExpression> render_hypotheses(const CategoryConfig& config);

enum class CountMode {
  kPerExpression,         // a sentence adds 1 to every expression it entails
  kPerSentenceDirection,  // a sentence adds at most 1 per direction
};

std::string_view to_string(CountMode mode);
CountMode parse_count_mode(std::string_view name);

struct ExpressionCount {
  DirectionalExpression expression;
  std::size_t count = 0;  // C_e(d)
};

struct ExpressionCounts {
  std::string doc_id;
  std::string category;
  std::vector<ExpressionCount> counts;  // render order
  std::size_t topic_sentence_total = 0;
  // Sentences entailing at least one expression of the given direction.
  std::size_t up_sentences = 0;
  std::size_t down_sentences = 0;
};

struct StanceResult {
  std::string doc_id;
  std::string category;
  std::optional<double> score;  // undefined iff up_total + down_total == 0
  std::size_t up_total = 0;
  std::size_t down_total = 0;
};

// A stance result joined with the document metadata it was computed from;
// the unit of the stance record file.
struct StanceRecord {
  DocumentMeta meta;
  StanceResult result;
  // (expression, C_e(d)) in render order; empty when read back from disk
  // without the per-expression columns.
  std::vector<std::pair<std::string, std::size_t>> expression_counts;
};

// (up - down) / (up + down), or nullopt for a zero denominator.
std::optional<double> stance_ratio(std::size_t up_total, std::size_t down_total);

// Per-sentence entailment scores -> counts. scores[s][e] is the score of
// gated sentence s against expression e of render_hypotheses(config).
ExpressionCounts tally_expressions(std::string doc_id, const CategoryConfig& config,
                                   const std::vector<std::vector<double>>& scores, double threshold);

// Scores every sentence assigned to config.category against the category's
// hypotheses; other sentences are never sent to the backend.
ExpressionCounts count_expressions(const Document& doc, std::span<const TopicAssignment> assignments,
                                   const CategoryConfig& config, double threshold, Entailer& entailer);

StanceResult stance_score(const ExpressionCounts& counts, const CategoryConfig& config,
                          CountMode mode = CountMode::kPerExpression);

}  // namespace stance_scope

#endif  // STANCE_SCOPE_STANCE_HPP_
