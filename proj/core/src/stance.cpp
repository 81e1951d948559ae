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

#include "stance_scope/stance.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace stance_scope {

namespace {

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string normalized_expression(std::string_view expression) {
  std::string e = trimmed(expression);
  while (!e.empty() && (e.back() == '.' || e.back() == '!' || e.back() == '?')) e.pop_back();
  for (char& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return e;
}

std::string render_sentence(std::string_view subject_phrase, std::string_view expression) {
  std::string subject = trimmed(subject_phrase);
  if (!subject.empty()) subject[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(subject[0])));
  return subject + " " + normalized_expression(expression) + ".";
}

}  // namespace

std::string_view to_string(Direction direction) { return direction == Direction::kUp ? "up" : "down"; }

std::string_view to_string(CountMode mode) {
  return mode == CountMode::kPerExpression ? "per_expression" : "per_sentence_direction";
}

CountMode parse_count_mode(std::string_view name) {
  if (name == "per_expression") return CountMode::kPerExpression;
  if (name == "per_sentence_direction") return CountMode::kPerSentenceDirection;
  throw ConfigError("unknown count_mode '" + std::string(name) + "'");
}

void CategoryConfig::validate() const {
  if (category.empty()) throw InvalidCategoryConfig("category without a topic name");
  if (trimmed(subject_phrase).empty()) throw InvalidCategoryConfig(category + ": empty subject_phrase");
  if (upward_expressions.empty() || downward_expressions.empty()) {
    throw InvalidCategoryConfig(category + ": both expression sets must be non-empty");
  }
  std::set<std::string> up;
  for (const auto& e : upward_expressions) {
    if (normalized_expression(e).empty()) throw InvalidCategoryConfig(category + ": empty expression");
    up.insert(normalized_expression(e));
  }
  for (const auto& e : downward_expressions) {
    if (normalized_expression(e).empty()) throw InvalidCategoryConfig(category + ": empty expression");
    if (up.count(normalized_expression(e))) {
      throw InvalidCategoryConfig(category + ": expression '" + e + "' is both upward and downward");
    }
  }
  render_hypotheses(*this);
}

std::vector<CategoryConfig> default_categories() {
  return {
      {"Inflation", "Inflation",
       {"increased", "picked up", "moved up", "elevated", "risen"},
       {"declined", "diminished", "moved lower", "edged down", "slowed"}},
      {"JobGain", "Job gains",
       {"increased", "strengthened", "picked up", "been strong"},
       {"declined", "weakened", "softened", "been weak"}},
      {"EconomicGrowth", "Economic growth",
       {"expanded", "strengthened", "picked up", "been solid"},
       {"slowed", "contracted", "weakened", "declined"}},
  };
}

std::vector<DirectionalExpression> render_hypotheses(const CategoryConfig& config) {
  std::vector<DirectionalExpression> out;
  std::set<std::string> seen;
  auto add = [&](const std::vector<std::string>& list, Direction direction) {
    for (const auto& e : list) {
      std::string sentence = render_sentence(config.subject_phrase, e);
      if (!seen.insert(sentence).second) {
        throw DuplicateHypothesis(config.category + ": hypothesis '" + sentence + "' appears twice");
      }
      out.push_back({normalized_expression(e), direction, HypothesisText(std::move(sentence))});
    }
  };
  add(config.upward_expressions, Direction::kUp);
  add(config.downward_expressions, Direction::kDown);
  return out;
}

std::optional<double> stance_ratio(std::size_t up_total, std::size_t down_total) {
  const std::size_t total = up_total + down_total;
  if (total == 0) return std::nullopt;
  return (static_cast<double>(up_total) - static_cast<double>(down_total)) / static_cast<double>(total);
}

ExpressionCounts tally_expressions(std::string doc_id, const CategoryConfig& config,
                                   const std::vector<std::vector<double>>& scores, double threshold) {
  ExpressionCounts out;
  out.doc_id = std::move(doc_id);
  out.category = config.category;
  for (auto& e : render_hypotheses(config)) out.counts.push_back({std::move(e), 0});
  out.topic_sentence_total = scores.size();
  for (const auto& row : scores) {
    if (row.size() != out.counts.size()) throw Error("score row width does not match expression count");
    bool any_up = false;
    bool any_down = false;
    for (std::size_t e = 0; e < row.size(); ++e) {
      if (row[e] < threshold) continue;
      ++out.counts[e].count;
      (out.counts[e].expression.direction == Direction::kUp ? any_up : any_down) = true;
    }
    out.up_sentences += any_up ? 1 : 0;
    out.down_sentences += any_down ? 1 : 0;
  }
  return out;
}

ExpressionCounts count_expressions(const Document& doc, std::span<const TopicAssignment> assignments,
                                   const CategoryConfig& config, double threshold, Entailer& entailer) {
  validate_threshold(threshold);
  const auto expressions = render_hypotheses(config);

  std::vector<const Sentence*> gated;
  for (const auto& s : doc.sentences) {
    auto it = std::find_if(assignments.begin(), assignments.end(), [&](const TopicAssignment& a) {
      return a.sentence_ref.doc_id == doc.meta.doc_id && a.sentence_ref.sentence_index == s.index;
    });
    if (it == assignments.end()) {
      throw Error(doc.meta.doc_id + ": no topic assignment for sentence " + std::to_string(s.index));
    }
    if (it->has(config.category)) gated.push_back(&s);
  }

  std::vector<PremiseHypothesis> pairs;
  pairs.reserve(gated.size() * expressions.size());
  for (const Sentence* s : gated) {
    for (const auto& e : expressions) pairs.push_back({s->text, e.hypothesis.str()});
  }
  std::vector<std::vector<double>> scores(gated.size(), std::vector<double>(expressions.size()));
  if (!pairs.empty()) {
    auto flat = entailer.entail_pairs(pairs);
    for (std::size_t i = 0; i < flat.size(); ++i) {
      scores[i / expressions.size()][i % expressions.size()] = flat[i].value();
    }
  }
  return tally_expressions(doc.meta.doc_id, config, scores, threshold);
}

StanceResult stance_score(const ExpressionCounts& counts, const CategoryConfig& config,
                          CountMode mode) {
  if (counts.category != config.category) {
    throw Error("counts for '" + counts.category + "' scored with category '" + config.category + "'");
  }
  StanceResult result{counts.doc_id, counts.category, std::nullopt, 0, 0};
  if (mode == CountMode::kPerSentenceDirection) {
    result.up_total = counts.up_sentences;
    result.down_total = counts.down_sentences;
  } else {
    // Direction comes from the config's sets, not from the tally.
    std::set<std::string> up;
    std::set<std::string> down;
    for (const auto& e : config.upward_expressions) up.insert(normalized_expression(e));
    for (const auto& e : config.downward_expressions) down.insert(normalized_expression(e));
    for (const auto& c : counts.counts) {
      if (up.count(c.expression.expression)) {
        result.up_total += c.count;
      } else if (down.count(c.expression.expression)) {
        result.down_total += c.count;
      } else {
        throw Error(config.category + ": counted expression '" + c.expression.expression +
                    "' is not in the category config");
      }
    }
  }
  result.score = stance_ratio(result.up_total, result.down_total);
  return result;
}

}  // namespace stance_scope
