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

#include <algorithm>
#include <cctype>

#include "stance_scope/entailment.hpp"

namespace stance_scope {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

std::vector<std::string> stemmed_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_word_char(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && is_word_char(text[i])) ++i;
    if (i > start) tokens.push_back(oracle_stem(text.substr(start, i - start)));
  }
  return tokens;
}

bool contains_sequence(const std::vector<std::string>& haystack,
                       const std::vector<std::string>& needle) {
  if (needle.empty()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

bool mentions_any(const std::vector<std::string>& premise_tokens,
                  const std::vector<std::string>& keywords) {
  return std::any_of(keywords.begin(), keywords.end(), [&](const std::string& kw) {
    return contains_sequence(premise_tokens, stemmed_tokens(kw));
  });
}

}  // namespace

std::string oracle_stem(std::string_view word) {
  std::string w;
  w.reserve(word.size());
  for (char c : word) w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  auto ends_with = [&](std::string_view suffix) {
    return w.size() >= suffix.size() && w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with("ies") && w.size() > 4) {
    w.replace(w.size() - 3, 3, "y");
  } else if (ends_with("ing") && w.size() > 5) {
    w.resize(w.size() - 3);
  } else if (ends_with("ed") && w.size() > 4) {
    w.resize(w.size() - 2);
  } else if (ends_with("s") && !ends_with("ss") && w.size() > 3) {
    w.resize(w.size() - 1);
  }
  if (ends_with("e") && w.size() > 4) w.resize(w.size() - 1);
  return w;
}

void OracleLexicon::add(const std::string& hypothesis, OracleEntry entry) {
  entries_.insert_or_assign(hypothesis, std::move(entry));
}

const OracleEntry* OracleLexicon::find(std::string_view hypothesis) const {
  auto it = entries_.find(hypothesis);
  return it == entries_.end() ? nullptr : &it->second;
}

EntailmentScore lexical_oracle_score(std::string_view premise, std::string_view hypothesis,
                                     const OracleLexicon& lexicon) {
  const OracleEntry* entry = lexicon.find(hypothesis);
  if (!entry) throw UnknownHypothesis("hypothesis not in oracle lexicon: '" + std::string(hypothesis) + "'");

  const auto tokens = stemmed_tokens(premise);
  const bool expression = entry->expression_keywords.empty() ||
                          mentions_any(tokens, entry->expression_keywords);
  if (!expression) return EntailmentScore(0.0);
  if (mentions_any(tokens, entry->subject_keywords)) return EntailmentScore(kOracleFullMatch);
  if (mentions_any(tokens, entry->subject_synonyms)) return EntailmentScore(kOracleSynonymMatch);
  return EntailmentScore(0.0);
}

std::vector<EntailmentScore> LexicalOracleBackend::score_batch(
    std::span<const PremiseHypothesis> pairs) {
  std::vector<EntailmentScore> scores;
  scores.reserve(pairs.size());
  for (const auto& pair : pairs) {
    scores.push_back(lexical_oracle_score(pair.premise, pair.hypothesis, lexicon_));
  }
  return scores;
}

}  // namespace stance_scope
