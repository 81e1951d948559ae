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

#ifndef STANCE_SCOPE_RECORDS_HPP_
#define STANCE_SCOPE_RECORDS_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "stance_scope/corpus.hpp"
#include "stance_scope/stance.hpp"
#include "stance_scope/topics.hpp"

// On-disk record files exchanged between pipeline stages. All are
// RFC-4180 CSV with a header row, UTF-8, LF line endings.
namespace stance_scope::records {

inline constexpr const char* kDocumentsFile = "documents.csv";
inline constexpr const char* kSentencesFile = "sentences.csv";
inline constexpr const char* kTopicsFile = "topics.csv";
inline constexpr const char* kStanceFile = "stance.csv";

// documents.csv: doc_id, doc_type, meeting_date, publication_date, speaker,
//   source_path, paragraph_count, sentence_count
// sentences.csv: doc_id, sentence_index, paragraph_index, text
std::string format_documents(std::span<const Document> docs);
std::string format_sentences(std::span<const Document> docs);
void write_corpus(const std::filesystem::path& dir, std::span<const Document> docs);
// Documents come back with metadata and sentences; paragraphs are not
// stored and stay empty.
std::vector<Document> read_corpus(const std::filesystem::path& dir);

// topics.csv: doc_id, sentence_index, topic, score, assigned (0|1); one row
// per sentence and topic.
std::string format_topic_records(std::span<const TopicAssignment> assignments);

// stance.csv: doc_id, meeting_date, publication_date, doc_type, category,
//   up_total, down_total, score (or NA), then one "<category>:<expression>"
//   count column per configured expression, empty for other categories.
std::string format_stance_records(std::span<const StanceRecord> records,
                                  std::span<const CategoryConfig> categories);
std::vector<StanceRecord> parse_stance_records(std::string_view csv_text);
std::vector<StanceRecord> read_stance_records(const std::filesystem::path& path);

}  // namespace stance_scope::records

#endif  // STANCE_SCOPE_RECORDS_HPP_
