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

#include "stance_scope/corpus.hpp"
#include "stance_scope/csv.hpp"
#include "test_support.hpp"

using namespace stance_scope;

namespace {

DocumentMeta meta_for(DocType type) {
  DocumentMeta meta;
  meta.doc_id = "d1";
  meta.doc_type = type;
  meta.meeting_date = parse_date("2021-03-17");
  meta.publication_date = parse_date("2021-04-07");
  return meta;
}

}  // namespace

TEST_CASE("a single-paragraph statement parses to one sentence") {
  const Document doc =
      parse_document("The Committee decided to maintain the target range.\n", meta_for(DocType::kStatement));
  CHECK(doc.paragraphs.size() == 1);
  REQUIRE(doc.sentences.size() == 1);
  CHECK(doc.sentences[0].text == "The Committee decided to maintain the target range.");
  CHECK(doc.warnings.empty());
}

TEST_CASE("footnote blocks and footers are removed") {
  const std::string raw =
      "Inflation remains elevated.[1]\n"
      "\n"
      "The Committee seeks to achieve maximum employment.\n"
      "\n"
      "______\n"
      "1. <https://www.federalreserve.gov/monetarypolicy/files/note.pdf>\n"
      "2. The note explains the projections in\n"
      "more detail.\n"
      "\n"
      "Back to Top\n"
      "Last Update: March 17, 2021\n";
  const Document doc = parse_document(raw, meta_for(DocType::kStatement));
  REQUIRE(doc.paragraphs.size() == 2);
  CHECK(doc.paragraphs[0] == "Inflation remains elevated.");
  CHECK(doc.paragraphs[1] == "The Committee seeks to achieve maximum employment.");
}

TEST_CASE("url-only lines are dropped even without a rule") {
  const std::string cleaned = strip_footers("Text stays.\nhttps://www.federalreserve.gov/x.htm\n", {});
  CHECK(cleaned.find("https") == std::string::npos);
  CHECK(cleaned.find("Text stays.") != std::string::npos);
}

TEST_CASE("numbered lines before any notes marker are kept") {
  const std::string cleaned = strip_footers("1. Inflation was the first topic.\n", {});
  CHECK(cleaned.find("Inflation was the first topic.") != std::string::npos);
}

TEST_CASE("paragraphs split on blank lines with whitespace collapsed") {
  const auto paragraphs = split_paragraphs("First  line\nwraps here.\n\n\n   \nSecond.\n\n---\n");
  REQUIRE(paragraphs.size() == 2);
  CHECK(paragraphs[0] == "First line wraps here.");
  CHECK(paragraphs[1] == "Second.");
}

TEST_CASE("minutes rosters and boilerplate are filtered") {
  const std::vector<std::string> in = {
      "PRESENT: Mr. Powell, Chair; Mr. Williams, Vice Chair; Mr. Barkin; Ms. Brainard; Mr. Bullard",
      "Participants observed that inflation remained elevated.",
      "Voting for this action: Jerome H. Powell, John C. Williams, Thomas I. Barkin, Raphael W. Bostic.",
      "By unanimous vote, the Committee authorized the Desk to execute transactions.",
      "The vote encompassed approval of the statement below for release at 2:00 p.m.",
      "Voting for the change were few participants who spoke later."};
  const auto out = filter_minutes_paragraphs(in);
  REQUIRE(out.size() == 2);
  CHECK(out[0] == in[1]);
  CHECK(out[1] == in[5]);
  CHECK(filter_minutes_paragraphs({}).empty());
}

TEST_CASE("filtering keeps order and text of retained paragraphs") {
  std::mt19937 rng(11);
  const std::vector<std::string> pool = {
      "Inflation picked up.", "PRESENT: Mr. A, Mr. B, Ms. C, Mr. D", "Growth slowed.",
      "By unanimous vote, the Committee adopted the directive.", "Job gains were solid."};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> in;
    const std::size_t n = testing::pick(rng, 8);
    for (std::size_t i = 0; i < n; ++i) in.push_back(pool[testing::pick(rng, pool.size())]);
    const auto out = filter_minutes_paragraphs(in);
    // out must be a subsequence of in.
    std::size_t j = 0;
    for (const auto& p : in) {
      if (j < out.size() && out[j] == p) ++j;
    }
    CHECK(j == out.size());
  }
}

TEST_CASE("a minutes document made only of rosters is empty after cleaning") {
  const std::string raw = "PRESENT: Mr. Powell, Chair; Mr. Williams; Mr. Barkin; Ms. Brainard\n";
  CHECK_THROWS_AS(parse_document(raw, meta_for(DocType::kMinutes)), EmptyAfterCleaning);
}

TEST_CASE("old-format minutes of action keep every paragraph") {
  const std::string raw =
      "PRESENT: Mr. Volcker, Chairman; Mr. Solomon; Mr. Partee; Mr. Wallich\n\n"
      "Inflation increased.\n\nGrowth slowed.\n\nBy unanimous vote, the directive was adopted.\n\n"
      "Employment weakened.\n";
  const Document doc = parse_document(raw, meta_for(DocType::kMinutesOfAction));
  CHECK(doc.paragraphs.size() == 5);
  const Document modern = parse_document(raw, meta_for(DocType::kMinutes));
  CHECK(modern.paragraphs.size() == 3);
}

TEST_CASE("reporter questions are removed from press conferences") {
  const std::string transcript =
      "Transcript of Chair Powell's Press Conference\n\n"
      "CHAIR POWELL. Good afternoon.\n\n"
      "MICHELLE SMITH. First question.\n\n"
      "CHAIR POWELL. So I think inflation will move up.";
  CHECK(strip_reporter_questions(transcript) == "Good afternoon.\n\nSo I think inflation will move up.");

  const std::string only_chair = "CHAIR POWELL. Good afternoon. We kept rates unchanged.";
  CHECK(strip_reporter_questions(only_chair) == "Good afternoon. We kept rates unchanged.");
  CHECK_THROWS_AS(strip_reporter_questions("Good afternoon. No labels at all."), NoSpeakerLabels);
}

TEST_CASE("speaker labels with initials and older chair titles are recognised") {
  const std::string transcript =
      "CHAIRMAN BERNANKE. Thank you.\n\nSTEVE LIESMAN. Mr. Chairman, a question.\n\n"
      "JEROME H. POWELL. Not the chair here.\n\nCHAIRMAN BERNANKE. Growth slowed.";
  CHECK(strip_reporter_questions(transcript) == "Thank you.\n\nGrowth slowed.");
}

TEST_CASE("a press conference without labels falls back to the whole text") {
  const Document doc =
      parse_document("Inflation remains elevated. Job gains were strong.\n", meta_for(DocType::kPressConference));
  CHECK(doc.sentences.size() == 2);
  CHECK(doc.warnings.size() == 1);
}

TEST_CASE("undecodable input is malformed") {
  CHECK_THROWS_AS(parse_document("bad \xC3\x28 bytes", meta_for(DocType::kStatement)), MalformedInput);
  CHECK_THROWS_AS(parse_document(std::string("nul\0byte", 8), meta_for(DocType::kStatement)), MalformedInput);
  CHECK_THROWS_AS(parse_document("", meta_for(DocType::kStatement)), EmptyAfterCleaning);
  CHECK_NOTHROW(parse_document("Caf\xC3\xA9 prices rose.", meta_for(DocType::kStatement)));
}

TEST_CASE("parse_document is deterministic and numbers sentences in order") {
  const std::string raw = "Inflation rose. Growth slowed.\n\nJob gains were strong. Mr. Powell agreed.\n";
  const Document a = parse_document(raw, meta_for(DocType::kStatement));
  const Document b = parse_document(raw, meta_for(DocType::kStatement));
  REQUIRE(a.sentences.size() == 4);
  for (std::size_t i = 0; i < a.sentences.size(); ++i) {
    CHECK(a.sentences[i].index == i);
    CHECK(a.sentences[i].text == b.sentences[i].text);
  }
  CHECK(a.sentences[2].paragraph_index == 1);
  CHECK(a.sentences[3].text == "Mr. Powell agreed.");
}

TEST_CASE("doc types round-trip through their names") {
  for (DocType t : {DocType::kStatement, DocType::kMinutes, DocType::kMinutesOfAction, DocType::kPressConference,
                    DocType::kSpeech}) {
    CHECK(parse_doc_type(to_string(t)) == t);
  }
  CHECK_THROWS_AS(parse_doc_type("memo"), DataError);
}

TEST_CASE("manifest validation") {
  testing::TempDir dir;
  const std::string header = "doc_id,doc_type,meeting_date,publication_date,speaker,path\n";

  write_text_file(dir / "ok.csv", header +
                                      "s1,statement,2021-03-17,2021-03-17,,a.txt\n"
                                      "sp1,speech,,2021-03-01,Powell,b.txt\n");
  const auto metas = read_manifest(dir / "ok.csv", dir.path());
  REQUIRE(metas.size() == 2);
  CHECK(metas[1].speaker == std::optional<std::string>("Powell"));
  CHECK_FALSE(metas[1].meeting_date.has_value());
  CHECK(metas[0].source_path == (dir.path() / "a.txt").lexically_normal().string());

  write_text_file(dir / "dup.csv", header +
                                       "s1,statement,2021-03-17,2021-03-17,,a.txt\n"
                                       "s1,statement,2021-04-28,2021-04-28,,b.txt\n");
  CHECK_THROWS_AS(read_manifest(dir / "dup.csv", dir.path()), DataError);

  write_text_file(dir / "order.csv", header + "m1,minutes,2021-03-17,2021-03-01,,a.txt\n");
  CHECK_THROWS_AS(read_manifest(dir / "order.csv", dir.path()), DataError);

  write_text_file(dir / "nodate.csv", header + "m1,minutes,,2021-03-01,,a.txt\n");
  CHECK_THROWS_AS(read_manifest(dir / "nodate.csv", dir.path()), DataError);
}
