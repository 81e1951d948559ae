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

#include "stance_scope/records.hpp"

#include <charconv>
#include <map>

#include "stance_scope/csv.hpp"

namespace stance_scope::records {

namespace {

std::string optional_date(const std::optional<Date>& d) { return d ? format_date(*d) : ""; }

std::size_t parse_size(const std::string& text, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DataError(std::string("invalid ") + what + " '" + text + "'");
  }
  return value;
}

double parse_double(const std::string& text, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DataError(std::string("invalid ") + what + " '" + text + "'");
  }
  return value;
}

DocumentMeta parse_meta(const csv::Table& t, const csv::Row& row) {
  DocumentMeta meta;
  meta.doc_id = row[t.column("doc_id")];
  meta.doc_type = parse_doc_type(row[t.column("doc_type")]);
  if (const auto& m = row[t.column("meeting_date")]; !m.empty()) meta.meeting_date = parse_date(m);
  meta.publication_date = parse_date(row[t.column("publication_date")]);
  if (auto c = t.find_column("speaker"); c && !row[*c].empty()) meta.speaker = row[*c];
  if (auto c = t.find_column("source_path")) meta.source_path = row[*c];
  return meta;
}

}  // namespace

std::string format_documents(std::span<const Document> docs) {
  std::string out = csv::format_row({"doc_id", "doc_type", "meeting_date", "publication_date", "speaker",
                                     "source_path", "paragraph_count", "sentence_count"});
  for (const auto& d : docs) {
    out += csv::format_row({d.meta.doc_id, std::string(to_string(d.meta.doc_type)),
                            optional_date(d.meta.meeting_date), format_date(d.meta.publication_date),
                            d.meta.speaker.value_or(""), d.meta.source_path,
                            std::to_string(d.paragraphs.size()), std::to_string(d.sentences.size())});
  }
  return out;
}

std::string format_sentences(std::span<const Document> docs) {
  std::string out = csv::format_row({"doc_id", "sentence_index", "paragraph_index", "text"});
  for (const auto& d : docs) {
    for (const auto& s : d.sentences) {
      out += csv::format_row({d.meta.doc_id, std::to_string(s.index), std::to_string(s.paragraph_index), s.text});
    }
  }
  return out;
}

void write_corpus(const std::filesystem::path& dir, std::span<const Document> docs) {
  write_text_file(dir / kDocumentsFile, format_documents(docs));
  write_text_file(dir / kSentencesFile, format_sentences(docs));
}

std::vector<Document> read_corpus(const std::filesystem::path& dir) {
  const csv::Table doc_table = csv::read_table(dir / kDocumentsFile);
  std::vector<Document> docs;
  std::map<std::string, std::size_t> index;
  for (const auto& row : doc_table.rows) {
    Document d;
    d.meta = parse_meta(doc_table, row);
    index.emplace(d.meta.doc_id, docs.size());
    docs.push_back(std::move(d));
  }

  const csv::Table sent_table = csv::read_table(dir / kSentencesFile);
  const auto c_id = sent_table.column("doc_id");
  const auto c_idx = sent_table.column("sentence_index");
  const auto c_par = sent_table.column("paragraph_index");
  const auto c_text = sent_table.column("text");
  for (const auto& row : sent_table.rows) {
    auto it = index.find(row[c_id]);
    if (it == index.end()) throw DataError("sentence record for unknown document '" + row[c_id] + "'");
    Document& d = docs[it->second];
    Sentence s{row[c_text], parse_size(row[c_idx], "sentence_index"),
               parse_size(row[c_par], "paragraph_index")};
    if (s.index != d.sentences.size()) {
      throw DataError(d.meta.doc_id + ": sentence records out of order at index " + row[c_idx]);
    }
    d.sentences.push_back(std::move(s));
  }
  return docs;
}

std::string format_topic_records(std::span<const TopicAssignment> assignments) {
  std::string out = csv::format_row({"doc_id", "sentence_index", "topic", "score", "assigned"});
  for (const auto& a : assignments) {
    for (const auto& [topic, score] : a.topic_scores) {
      out += csv::format_row({a.sentence_ref.doc_id, std::to_string(a.sentence_ref.sentence_index), topic,
                              csv::format_number(score), a.has(topic) ? "1" : "0"});
    }
  }
  return out;
}

std::string format_stance_records(std::span<const StanceRecord> records,
                                  std::span<const CategoryConfig> categories) {
  csv::Row header = {"doc_id", "meeting_date", "publication_date", "doc_type", "category",
                     "up_total", "down_total", "score"};
  // (category, expression) -> column
  std::map<std::pair<std::string, std::string>, std::size_t> count_columns;
  for (const auto& c : categories) {
    for (const auto& e : render_hypotheses(c)) {
      count_columns.emplace(std::make_pair(c.category, e.expression), header.size());
      header.push_back(c.category + ":" + e.expression);
    }
  }
  std::string out = csv::format_row(header);
  for (const auto& r : records) {
    csv::Row row = {r.meta.doc_id,
                    optional_date(r.meta.meeting_date),
                    format_date(r.meta.publication_date),
                    std::string(to_string(r.meta.doc_type)),
                    r.result.category,
                    std::to_string(r.result.up_total),
                    std::to_string(r.result.down_total),
                    r.result.score ? csv::format_number(*r.result.score) : "NA"};
    row.resize(header.size());
    for (const auto& [expression, count] : r.expression_counts) {
      auto it = count_columns.find({r.result.category, expression});
      if (it != count_columns.end()) row[it->second] = std::to_string(count);
    }
    out += csv::format_row(row);
  }
  return out;
}

std::vector<StanceRecord> parse_stance_records(std::string_view csv_text) {
  const csv::Table t = csv::parse_table(csv_text);
  const auto c_cat = t.column("category");
  const auto c_up = t.column("up_total");
  const auto c_down = t.column("down_total");
  const auto c_score = t.column("score");
  std::vector<std::pair<std::size_t, std::string>> count_cols;  // column, "cat:expr"
  for (std::size_t i = c_score + 1; i < t.header.size(); ++i) count_cols.emplace_back(i, t.header[i]);

  std::vector<StanceRecord> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    StanceRecord r;
    r.meta = parse_meta(t, row);
    r.result.doc_id = r.meta.doc_id;
    r.result.category = row[c_cat];
    r.result.up_total = parse_size(row[c_up], "up_total");
    r.result.down_total = parse_size(row[c_down], "down_total");
    if (row[c_score] != "NA") r.result.score = parse_double(row[c_score], "score");
    if (r.result.score.has_value() != (r.result.up_total + r.result.down_total > 0)) {
      throw DataError(r.meta.doc_id + ": score must be NA exactly when up_total + down_total is 0");
    }
    const std::string prefix = r.result.category + ":";
    for (const auto& [col, name] : count_cols) {
      if (row[col].empty() || name.compare(0, prefix.size(), prefix) != 0) continue;
      r.expression_counts.emplace_back(name.substr(prefix.size()), parse_size(row[col], "count"));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<StanceRecord> read_stance_records(const std::filesystem::path& path) {
  try {
    return parse_stance_records(read_text_file(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace stance_scope::records
