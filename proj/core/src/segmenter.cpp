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
#include <string>
#include <string_view>
#include <vector>

#include "stance_scope/corpus.hpp"

namespace stance_scope {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

// Length of a UTF-8 closing quote at pos (’ or ”), 0 if none.
std::size_t closing_quote_len(std::string_view s, std::size_t pos) {
  if (pos < s.size() && (s[pos] == '"' || s[pos] == '\'')) return 1;
  if (s.substr(pos, 3) == "\xE2\x80\x99" || s.substr(pos, 3) == "\xE2\x80\x9D") return 3;
  return 0;
}

bool opens_sentence(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return false;
  char c = s[pos];
  if (is_upper(c) || c == '"' || c == '\'') return true;
  return s.substr(pos, 3) == "\xE2\x80\x9C" || s.substr(pos, 3) == "\xE2\x80\x98";
}

bool is_initials(std::string_view token) {
  // "H." or "D.C." style: single letters each followed by a period.
  if (token.size() < 2 || token.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < token.size(); i += 2) {
    if (!is_alpha(token[i]) || token[i + 1] != '.') return false;
  }
  return true;
}

bool protected_by_abbreviation(std::string_view text, std::size_t period_pos,
                               const PreprocessRules& rules) {
  std::size_t begin = text.rfind(' ', period_pos);
  begin = begin == std::string_view::npos ? 0 : begin + 1;
  std::string_view token = text.substr(begin, period_pos - begin + 1);
  while (!token.empty() && (token.front() == '(' || token.front() == '"' ||
                            token.front() == '\'' || token.front() == '[')) {
    token.remove_prefix(1);
  }
  if (is_initials(token)) return true;
  return std::find(rules.abbreviations.begin(), rules.abbreviations.end(), token) !=
         rules.abbreviations.end();
}

bool has_alpha(std::string_view s) { return std::any_of(s.begin(), s.end(), is_alpha); }

}  // namespace

std::vector<Sentence> segment_sentences(std::string_view paragraph, const PreprocessRules& rules,
                                        std::size_t paragraph_index, std::size_t first_index) {
  const std::string text = normalize_whitespace(paragraph);
  std::vector<std::string> pieces;

  // Positions of unmatched-so-far ')' let us ignore an opening paren that
  // never closes instead of suppressing every later boundary.
  std::vector<std::size_t> close_after(text.size() + 1, 0);
  for (std::size_t i = text.size(); i-- > 0;) {
    close_after[i] = close_after[i + 1] + (text[i] == ')' ? 1 : 0);
  }

  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') {
      if (close_after[i] > static_cast<std::size_t>(depth)) ++depth;
      continue;
    }
    if (c == ')') {
      if (depth > 0) --depth;
      continue;
    }
    if (c != '.' && c != '!' && c != '?') continue;

    std::size_t j = i + 1;
    int local_depth = depth;
    while (j < text.size()) {
      if (text[j] == '.' || text[j] == '!' || text[j] == '?') {
        ++j;
      } else if (text[j] == ')' || text[j] == ']') {
        if (text[j] == ')' && local_depth > 0) --local_depth;
        ++j;
      } else if (std::size_t q = closing_quote_len(text, j)) {
        j += q;
      } else {
        break;
      }
    }
    if (j >= text.size() || text[j] != ' ' || !opens_sentence(text, j + 1)) continue;
    if (local_depth > 0) continue;
    if (c == '.' && protected_by_abbreviation(text, i, rules)) continue;

    depth = local_depth;
    pieces.push_back(text.substr(start, j - start));
    start = j + 1;
    i = j;
  }
  if (start < text.size()) pieces.push_back(text.substr(start));

  // Fragments without letters ("3.", "***") are folded into a neighbour so
  // that every sentence carries text and nothing is lost.
  std::vector<std::string> merged;
  std::string carry;
  for (auto& piece : pieces) {
    if (!has_alpha(piece)) {
      carry += carry.empty() ? piece : " " + piece;
      continue;
    }
    merged.push_back(carry.empty() ? std::move(piece) : carry + " " + piece);
    carry.clear();
  }
  if (!carry.empty()) {
    if (merged.empty()) {
      merged.push_back(std::move(carry));
    } else {
      merged.back() += " " + carry;
    }
  }

  std::vector<Sentence> sentences;
  sentences.reserve(merged.size());
  for (auto& s : merged) {
    sentences.push_back(Sentence{std::move(s), first_index + sentences.size(), paragraph_index});
  }
  return sentences;
}

}  // namespace stance_scope
