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

#include "stance_scope/topics.hpp"

#include <algorithm>

namespace stance_scope {

std::vector<Topic> default_topics() {
  return {{"Inflation", "Inflation"}, {"JobGain", "Job Gain"}, {"EconomicGrowth", "Economic Growth"}};
}

HypothesisText topic_hypothesis(const Topic& topic, std::string_view hypothesis_template) {
  if (topic.display_string.empty()) throw ConfigError("topic '" + topic.name + "' has no display string");
  std::string text(hypothesis_template);
  std::size_t slot = text.find("{}");
  if (slot == std::string::npos) throw ConfigError("topic hypothesis template lacks a {} placeholder");
  text.replace(slot, 2, topic.display_string);
  return HypothesisText(std::move(text));
}

void validate_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ConfigError("threshold must lie in (0, 1), got " + std::to_string(threshold));
  }
}

bool TopicAssignment::has(std::string_view topic_name) const {
  return std::find(topics.begin(), topics.end(), topic_name) != topics.end();
}

TopicAssignment assign_topics(SentenceRef ref,
                              const std::vector<std::pair<std::string, double>>& topic_scores,
                              double threshold) {
  TopicAssignment out{std::move(ref), topic_scores, {}};
  for (const auto& [name, score] : topic_scores) {
    if (score >= threshold) out.topics.push_back(name);
  }
  return out;
}

TopicAssignment classify_topics(const SentenceRef& ref, std::string_view sentence_text,
                                std::span<const Topic> topics, double threshold, Entailer& entailer,
                                std::string_view hypothesis_template) {
  validate_threshold(threshold);
  std::vector<std::pair<std::string, double>> scores;
  if (!topics.empty()) {
    std::vector<HypothesisText> hypotheses;
    hypotheses.reserve(topics.size());
    for (const auto& t : topics) hypotheses.push_back(topic_hypothesis(t, hypothesis_template));
    auto result = entailer.entail(sentence_text, hypotheses);
    for (std::size_t i = 0; i < topics.size(); ++i) scores.emplace_back(topics[i].name, result[i].value());
  }
  return assign_topics(ref, scores, threshold);
}

std::vector<TopicAssignment> classify_document(const Document& doc, std::span<const Topic> topics,
                                               double threshold, Entailer& entailer,
                                               std::string_view hypothesis_template) {
  validate_threshold(threshold);
  std::vector<std::string> hypotheses;
  for (const auto& t : topics) hypotheses.push_back(topic_hypothesis(t, hypothesis_template).str());

  std::vector<PremiseHypothesis> pairs;
  pairs.reserve(doc.sentences.size() * topics.size());
  for (const auto& s : doc.sentences) {
    for (const auto& h : hypotheses) pairs.push_back({s.text, h});
  }
  auto scores = entailer.entail_pairs(pairs);

  std::vector<TopicAssignment> out;
  out.reserve(doc.sentences.size());
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    std::vector<std::pair<std::string, double>> per_topic;
    for (std::size_t t = 0; t < topics.size(); ++t) {
      per_topic.emplace_back(topics[t].name, scores[i * topics.size() + t].value());
    }
    out.push_back(assign_topics({doc.meta.doc_id, doc.sentences[i].index}, per_topic, threshold));
  }
  return out;
}

}  // namespace stance_scope
