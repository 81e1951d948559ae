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

#ifndef STANCE_SCOPE_TOPICS_HPP_
#define STANCE_SCOPE_TOPICS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stance_scope/corpus.hpp"
#include "stance_scope/entailment.hpp"

namespace stance_scope {

// name is the stable key used in configs and output records; the display
// string is what goes into the hypothesis template.
struct Topic {
  std::string name;
  std::string display_string;

  auto operator<=>(const Topic&) const = default;
};

inline constexpr std::string_view kDefaultTopicTemplate = "This sentence is related to the topic of {}.";
inline constexpr double kDefaultThreshold = 0.9;

// Inflation, Job Gain, Economic Growth.
std::vector<Topic> default_topics();

// Substitutes the display string for the "{}" placeholder.
HypothesisText topic_hypothesis(const Topic& topic,
                                std::string_view hypothesis_template = kDefaultTopicTemplate);

// Throws ConfigError unless 0 < threshold < 1.
void validate_threshold(double threshold);

struct SentenceRef {
  std::string doc_id;
  std::size_t sentence_index = 0;

  auto operator<=>(const SentenceRef&) const = default;
};

struct TopicAssignment {
  SentenceRef sentence_ref;
  // In topic-list order.
  std::vector<std::pair<std::string, double>> topic_scores;
  // Names of topics whose score reached the threshold, in topic-list order.
  std::vector<std::string> topics;

  bool has(std::string_view topic_name) const;
};

// Pure threshold decision: a topic is assigned when score >= threshold.
TopicAssignment assign_topics(SentenceRef ref,
                              const std::vector<std::pair<std::string, double>>& topic_scores,
                              double threshold);

TopicAssignment classify_topics(const SentenceRef& ref, std::string_view sentence_text,
                                std::span<const Topic> topics, double threshold, Entailer& entailer,
                                std::string_view hypothesis_template = kDefaultTopicTemplate);

// All sentences of a document in one batched backend round trip.
std::vector<TopicAssignment> classify_document(const Document& doc, std::span<const Topic> topics,
                                               double threshold, Entailer& entailer,
                                               std::string_view hypothesis_template = kDefaultTopicTemplate);

}  // namespace stance_scope

#endif  // STANCE_SCOPE_TOPICS_HPP_
