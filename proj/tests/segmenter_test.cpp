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

#include <doctest.h>

#include <algorithm>

#include "stance_scope/corpus.hpp"
#include "test_support.hpp"

using namespace stance_scope;

namespace {

std::vector<std::string> texts(std::string_view paragraph, const PreprocessRules& rules = {}) {
  std::vector<std::string> out;
  for (const auto& s : segment_sentences(paragraph, rules)) out.push_back(s.text);
  return out;
}

using V = std::vector<std::string>;

}  // namespace

TEST_CASE("canonical split") {
  CHECK(texts("Inflation remains elevated. Job gains have been strong.") ==
        V{"Inflation remains elevated.", "Job gains have been strong."});
}

TEST_CASE("no split after titles") {
  CHECK(texts("Mr. Powell noted risks. The Committee agreed.") ==
        V{"Mr. Powell noted risks.", "The Committee agreed."});
}

TEST_CASE("abbreviation inside parentheses does not end the sentence") {
  CHECK(texts("Growth slowed in Q1 (see par. 3). Outlook improved.") ==
        V{"Growth slowed in Q1 (see par. 3).", "Outlook improved."});
}

TEST_CASE("parenthesised numerals and initials") {
  CHECK(texts("Spending rose (1) in goods and (2) in services. Imports fell.") ==
        V{"Spending rose (1) in goods and (2) in services.", "Imports fell."});
  CHECK(texts("Jerome H. Powell spoke. Others listened.") == V{"Jerome H. Powell spoke.", "Others listened."});
}

TEST_CASE("question and exclamation marks and quotes end sentences") {
  CHECK(texts("Will prices rise? \"Yes,\" she said. Wow! Done.") ==
        V{"Will prices rise?", "\"Yes,\" she said.", "Wow!", "Done."});
  CHECK(texts("He said \"prices rose.\" Then he left.") == V{"He said \"prices rose.\"", "Then he left."});
}

TEST_CASE("a lowercase continuation is not a boundary") {
  CHECK(texts("Prices rose 2.5 percent. and then fell.") == V{"Prices rose 2.5 percent. and then fell."});
}

TEST_CASE("the abbreviation list is configuration") {
  PreprocessRules rules;
  CHECK(texts("Sales rose approx. Ten firms reported.", rules).size() == 1);
  rules.abbreviations.erase(std::find(rules.abbreviations.begin(), rules.abbreviations.end(), "approx."));
  CHECK(texts("Sales rose approx. Ten firms reported.", rules).size() == 2);
}

TEST_CASE("indices follow the supplied offsets") {
  const auto s = segment_sentences("One here. Two here.", {}, 4, 10);
  REQUIRE(s.size() == 2);
  CHECK(s[0].index == 10);
  CHECK(s[1].index == 11);
  CHECK(s[1].paragraph_index == 4);
}

TEST_CASE("joining sentences recovers the whitespace-normalised paragraph") {
  const std::vector<std::string> words = {"Inflation", "rose.", "Mr.", "Powell", "U.S.", "(see", "par.", "3).",
                                          "Growth?",   "slowed!", "\"Yes.\"", "jobs", "A.", "gains", "i.e.,",
                                          "the",       "(1)",     "economy.", "Prices", "\t", "\n"};
  std::mt19937 rng(2026);
  for (int trial = 0; trial < 500; ++trial) {
    std::string paragraph = "Start";
    const std::size_t n = 1 + testing::pick(rng, 25);
    for (std::size_t i = 0; i < n; ++i) {
      paragraph += testing::pick(rng, 4) == 0 ? "  " : " ";
      paragraph += words[testing::pick(rng, words.size())];
    }
    std::string normalised;
    for (char c : paragraph) {
      const bool space = c == ' ' || c == '\t' || c == '\n';
      if (space) {
        if (!normalised.empty() && normalised.back() != ' ') normalised += ' ';
      } else {
        normalised += c;
      }
    }
    while (!normalised.empty() && normalised.back() == ' ') normalised.pop_back();

    const auto sentences = segment_sentences(paragraph);
    std::string joined;
    for (const auto& s : sentences) {
      CHECK_FALSE(s.text.empty());
      CHECK(s.text.find('\n') == std::string::npos);
      CHECK(s.text.front() != ' ');
      CHECK(s.text.back() != ' ');
      CHECK(std::any_of(s.text.begin(), s.text.end(), [](unsigned char c) { return std::isalpha(c); }));
      if (!joined.empty()) joined += ' ';
      joined += s.text;
    }
    CHECK(joined == normalised);
  }
}

TEST_CASE("hand-labelled fixture reaches 95 percent") {
  const auto gold = testing::load_segmentation_gold(testing::source_dir() / "tests/data/segmentation_gold.txt");
  const auto score = testing::score_segmentation(gold);
  CHECK(score.gold == 50);
  for (const auto& missed : score.missed) MESSAGE("missed: " << missed);
  CHECK(score.accuracy() >= 0.95);
}
