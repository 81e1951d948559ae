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

#ifndef STANCE_SCOPE_CORPUS_HPP_
#define STANCE_SCOPE_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stance_scope/date.hpp"
#include "stance_scope/errors.hpp"

namespace stance_scope {

enum class DocType { kStatement, kMinutes, kMinutesOfAction, kPressConference, kSpeech };

std::string_view to_string(DocType type);
// Accepts the snake_case names used in manifests and config files.
DocType parse_doc_type(std::string_view name);

struct DocumentMeta {
  std::string doc_id;
  DocType doc_type = DocType::kStatement;
  std::optional<Date> meeting_date;  // absent for speeches
  Date publication_date{};
  std::optional<std::string> speaker;
  std::string source_path;
};

struct Sentence {
  std::string text;
  std::size_t index = 0;
  std::size_t paragraph_index = 0;
};

struct Document {
  DocumentMeta meta;
  std::vector<std::string> paragraphs;
  std::vector<Sentence> sentences;
  // Non-fatal preprocessing notes, e.g. a press conference without
  // speaker labels that was kept whole.
  std::vector<std::string> warnings;
};

class EmptyAfterCleaning : public DataError {
 public:
  using DataError::DataError;
};

class MalformedInput : public DataError {
 public:
  using DataError::DataError;
};

class NoSpeakerLabels : public DataError {
 public:
  using DataError::DataError;
};

// Everything here is data loaded from the run config; the defaults mirror
// the shipped configuration.
struct PreprocessRules {
  // Tokens (including their trailing period) after which a sentence never
  // ends. Single-letter initials are always protected.
  std::vector<std::string> abbreviations = {
      "Mr.", "Mrs.", "Ms.", "Dr.", "U.S.", "p.m.", "a.m.", "Inc.", "No.", "vs.",
      "Jr.", "Sr.", "St.", "Co.", "Corp.", "Ltd.", "e.g.", "i.e.",
      "approx.", "par.", "para.", "Jan.", "Feb.", "Mar.", "Apr.", "Aug.",
      "Sept.", "Sep.", "Oct.", "Nov.", "Dec.", "Gov.", "Sen.", "Rep.", "Prof.",
      "U.K.", "U.N.", "Fig.", "cf.", "al."};
  // A minutes paragraph starting with one of these and listing at least
  // roster_min_names capitalized entries is an attendance or vote roster.
  std::vector<std::string> roster_markers = {"PRESENT", "Voting for", "Voting against"};
  std::size_t roster_min_names = 3;
  // Minutes paragraphs starting with one of these describe directive
  // implementation and are dropped.
  std::vector<std::string> boilerplate_markers = {"By unanimous vote", "The vote encompassed"};
  // Speaker labels whose name part starts with one of these belong to the
  // chair in press-conference transcripts.
  std::vector<std::string> chair_label_prefixes = {"CHAIR", "CHAIRMAN", "CHAIRWOMAN"};
  // ECMAScript regexes; a whole line matching any of them is dropped.
  std::vector<std::string> footer_patterns = {
      R"(^Last [Uu]pdate:.*$)", R"(^Back to [Tt]op$)", R"(^Return to text$)",
      R"(^Implementation Note issued .*$)"};
};

// Footer, footnote and annotation removal on raw text; returns the
// cleaned text with paragraph breaks (blank lines) preserved.
std::string strip_footers(std::string_view raw_text, const PreprocessRules& rules);

// Blank-line paragraph split; each paragraph has its lines joined with a
// single space and whitespace collapsed. Paragraphs without any
// alphabetic character are dropped.
std::vector<std::string> split_paragraphs(std::string_view text);

// Never reorders or edits; only drops roster and directive paragraphs.
std::vector<std::string> filter_minutes_paragraphs(const std::vector<std::string>& paragraphs,
                                                   const PreprocessRules& rules = {});

// Keeps only the chair's turns of a press-conference transcript, joined by
// blank lines in original order. Throws NoSpeakerLabels when no turn label
// is present at all.
std::string strip_reporter_questions(std::string_view transcript_text,
                                     const PreprocessRules& rules = {});

// Rule-based sentence boundary detection over a single paragraph.
// Whitespace is normalized; joining the returned texts with single spaces
// gives back the normalized paragraph.
std::vector<Sentence> segment_sentences(std::string_view paragraph,
                                        const PreprocessRules& rules = {},
                                        std::size_t paragraph_index = 0,
                                        std::size_t first_index = 0);

Document parse_document(std::string_view raw_text, const DocumentMeta& meta,
                        const PreprocessRules& rules = {});

// Rejects NUL bytes and invalid UTF-8 with MalformedInput.
void validate_text_encoding(std::string_view raw_text);

// Manifest CSV with columns doc_id, doc_type, meeting_date,
// publication_date, speaker, path. Relative paths are resolved against
// corpus_dir. Duplicate doc_ids and dates violating publication >= meeting
// are DataErrors.
std::vector<DocumentMeta> read_manifest(const std::filesystem::path& manifest_path,
                                        const std::filesystem::path& corpus_dir);

}  // namespace stance_scope

#endif  // STANCE_SCOPE_CORPUS_HPP_
