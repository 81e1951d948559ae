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

#include "stance_scope/corpus.hpp"

#include <algorithm>
#include <cstdint>
#include <regex>
#include <set>
#include <sstream>

#include "stance_scope/csv.hpp"

namespace stance_scope {

namespace {

constexpr std::string_view kDocTypeNames[] = {"statement", "minutes", "minutes_of_action",
                                              "press_conference", "speech"};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }
bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

bool is_horizontal_rule(std::string_view line) {
  std::size_t marks = 0;
  for (char c : line) {
    if (c == '-' || c == '_' || c == '*' || c == '=') {
      ++marks;
    } else if (c != ' ') {
      return false;
    }
  }
  return marks >= 3;
}

bool is_url_token(std::string_view s) {
  if (s.size() >= 2 && s.front() == '<' && s.back() == '>') s = s.substr(1, s.size() - 2);
  if (!starts_with(s, "http://") && !starts_with(s, "https://") && !starts_with(s, "www.")) {
    return false;
  }
  return std::none_of(s.begin(), s.end(), is_space);
}

// "12. " at line start; returns the remainder or nullopt.
std::optional<std::string_view> footnote_body(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && is_digit(line[i])) ++i;
  if (i == 0 || i > 3 || i >= line.size() || line[i] != '.') return std::nullopt;
  return trim(line.substr(i + 1));
}

std::string remove_inline_annotations(std::string_view line) {
  // Bracketed numeric note references such as "[3]".
  std::string out;
  out.reserve(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '[') {
      std::size_t j = i + 1;
      while (j < line.size() && is_digit(line[j])) ++j;
      if (j > i + 1 && j < line.size() && line[j] == ']') {
        i = j;
        continue;
      }
    }
    out.push_back(line[i]);
  }
  return out;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  bool pending = false;
  for (char c : text) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

// Counts comma/semicolon separated entries that start with a capital.
std::size_t capitalized_entries(std::string_view text) {
  std::size_t count = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t sep = text.find_first_of(",;", start);
    std::string_view entry =
        trim(text.substr(start, sep == std::string_view::npos ? std::string_view::npos : sep - start));
    if (!entry.empty() && is_upper(entry.front())) ++count;
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  return count;
}

// Upper-case speaker label ending in ". " at the start of a line, e.g.
// "CHAIR POWELL." or "MICHELLE SMITH.". Returns the label without the
// period and the length consumed.
std::optional<std::pair<std::string, std::size_t>> speaker_label(std::string_view line) {
  if (line.empty() || !is_upper(line.front())) return std::nullopt;
  std::size_t end = 0;
  for (;;) {
    std::size_t dot = line.find('.', end);
    if (dot == std::string_view::npos) return std::nullopt;
    if (dot + 1 < line.size() && line[dot + 1] != ' ') return std::nullopt;
    end = dot;
    // A single-letter initial ("JEROME H. POWELL.") continues the label.
    bool initial = dot >= 2 && line[dot - 2] == ' ' && is_upper(line[dot - 1]);
    if (!initial || dot + 1 >= line.size()) break;
    end = dot + 1;
  }
  std::string_view label = line.substr(0, end);
  std::size_t run = 0;
  bool has_word = false;
  for (char c : label) {
    if (is_upper(c)) {
      has_word = has_word || ++run >= 2;
    } else if (c == ' ' || c == '-' || c == '\'' || c == '.') {
      run = 0;
    } else {
      return std::nullopt;
    }
  }
  if (!has_word) return std::nullopt;
  std::size_t consumed = end + 1;
  while (consumed < line.size() && line[consumed] == ' ') ++consumed;
  return std::make_pair(std::string(trim(label)), consumed);
}

bool is_chair_label(std::string_view label, const PreprocessRules& rules) {
  for (const auto& prefix : rules.chair_label_prefixes) {
    if (label == prefix) return true;
    if (starts_with(label, prefix) && label.size() > prefix.size() && label[prefix.size()] == ' ') {
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(DocType type) { return kDocTypeNames[static_cast<int>(type)]; }

DocType parse_doc_type(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kDocTypeNames); ++i) {
    if (kDocTypeNames[i] == name) return static_cast<DocType>(i);
  }
  throw DataError("unknown doc_type '" + std::string(name) + "'");
}

void validate_text_encoding(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    if (c == 0) throw MalformedInput("NUL byte at offset " + std::to_string(i));
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      throw MalformedInput("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + extra >= text.size()) {
      throw MalformedInput("truncated UTF-8 sequence at offset " + std::to_string(i));
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) {
        throw MalformedInput("invalid UTF-8 continuation at offset " + std::to_string(i + k));
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr std::uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw MalformedInput("invalid UTF-8 code point at offset " + std::to_string(i));
    }
    i += extra + 1;
  }
}

std::string strip_footers(std::string_view raw_text, const PreprocessRules& rules) {
  std::vector<std::regex> footers;
  footers.reserve(rules.footer_patterns.size());
  for (const auto& pattern : rules.footer_patterns) footers.emplace_back(pattern);

  std::string out;
  bool in_notes = false;     // seen a rule or "Return to text" marker
  bool in_footnote = false;  // inside a numbered note, until a blank line
  for (std::string_view line : split_lines(raw_text)) {
    std::string_view t = trim(line);
    if (t.empty()) {
      in_footnote = false;
      out += '\n';
      continue;
    }
    if (in_footnote) continue;
    if (is_horizontal_rule(t)) {
      in_notes = true;
      continue;
    }
    std::string owned(t);
    bool footer = std::any_of(footers.begin(), footers.end(),
                              [&](const std::regex& re) { return std::regex_match(owned, re); });
    if (footer) {
      if (t == "Return to text") in_notes = true;
      continue;
    }
    if (is_url_token(t)) continue;
    if (auto body = footnote_body(t)) {
      if (is_url_token(*body)) continue;
      if (in_notes) {
        in_footnote = true;
        continue;
      }
    }
    out += remove_inline_annotations(line);
    out += '\n';
  }
  return out;
}

std::vector<std::string> split_paragraphs(std::string_view text) {
  std::vector<std::string> paragraphs;
  std::string current;
  auto flush = [&] {
    std::string p = collapse_whitespace(current);
    if (std::any_of(p.begin(), p.end(), is_alpha)) paragraphs.push_back(std::move(p));
    current.clear();
  };
  for (std::string_view line : split_lines(text)) {
    if (trim(line).empty()) {
      flush();
      continue;
    }
    current += line;
    current += ' ';
  }
  flush();
  return paragraphs;
}

std::vector<std::string> filter_minutes_paragraphs(const std::vector<std::string>& paragraphs,
                                                   const PreprocessRules& rules) {
  std::vector<std::string> kept;
  kept.reserve(paragraphs.size());
  for (const auto& paragraph : paragraphs) {
    std::string_view p = trim(paragraph);
    bool drop = false;
    for (const auto& marker : rules.boilerplate_markers) {
      if (starts_with(p, marker)) drop = true;
    }
    for (const auto& marker : rules.roster_markers) {
      if (!drop && starts_with(p, marker) &&
          capitalized_entries(p.substr(marker.size())) >= rules.roster_min_names) {
        drop = true;
      }
    }
    if (!drop) kept.push_back(paragraph);
  }
  return kept;
}

std::string strip_reporter_questions(std::string_view transcript_text,
                                     const PreprocessRules& rules) {
  struct Turn {
    bool chair = false;
    std::string text;
  };
  std::vector<Turn> turns;
  for (std::string_view line : split_lines(transcript_text)) {
    std::string_view t = trim(line);
    if (auto label = speaker_label(t)) {
      turns.push_back(Turn{is_chair_label(label->first, rules), std::string(t.substr(label->second))});
      continue;
    }
    if (turns.empty()) continue;  // title and preamble before the first turn
    turns.back().text += '\n';
    turns.back().text += line;
  }
  if (turns.empty()) throw NoSpeakerLabels("no speaker-turn labels found in transcript");

  std::string out;
  for (const auto& turn : turns) {
    if (!turn.chair) continue;
    std::string_view body = trim(turn.text);
    if (body.empty()) continue;
    if (!out.empty()) out += "\n\n";
    out += body;
  }
  return out;
}

Document parse_document(std::string_view raw_text, const DocumentMeta& meta,
                        const PreprocessRules& rules) {
  validate_text_encoding(raw_text);
  if (trim(raw_text).empty()) throw EmptyAfterCleaning(meta.doc_id + ": document is empty");

  Document doc;
  doc.meta = meta;
  std::string cleaned = strip_footers(raw_text, rules);
  if (meta.doc_type == DocType::kPressConference) {
    try {
      cleaned = strip_reporter_questions(cleaned, rules);
    } catch (const NoSpeakerLabels&) {
      doc.warnings.push_back("no speaker labels; using whole transcript");
    }
  }

  doc.paragraphs = split_paragraphs(cleaned);
  if (meta.doc_type == DocType::kMinutes) {
    doc.paragraphs = filter_minutes_paragraphs(doc.paragraphs, rules);
  }
  if (doc.paragraphs.empty()) {
    throw EmptyAfterCleaning(meta.doc_id + ": no paragraph survived preprocessing");
  }

  for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
    for (auto& s : segment_sentences(doc.paragraphs[p], rules, p, doc.sentences.size())) {
      if (std::any_of(s.text.begin(), s.text.end(), is_alpha)) {
        s.index = doc.sentences.size();
        doc.sentences.push_back(std::move(s));
      }
    }
  }
  return doc;
}

std::vector<DocumentMeta> read_manifest(const std::filesystem::path& manifest_path,
                                        const std::filesystem::path& corpus_dir) {
  csv::Table table = csv::read_table(manifest_path);
  const auto c_id = table.column("doc_id");
  const auto c_type = table.column("doc_type");
  const auto c_meeting = table.column("meeting_date");
  const auto c_pub = table.column("publication_date");
  const auto c_speaker = table.column("speaker");
  const auto c_path = table.column("path");

  std::vector<DocumentMeta> metas;
  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    DocumentMeta meta;
    meta.doc_id = std::string(trim(row[c_id]));
    if (meta.doc_id.empty()) throw DataError(manifest_path.string() + ": empty doc_id");
    if (!seen.insert(meta.doc_id).second) {
      throw DataError(manifest_path.string() + ": duplicate doc_id '" + meta.doc_id + "'");
    }
    try {
      meta.doc_type = parse_doc_type(trim(row[c_type]));
      if (!trim(row[c_meeting]).empty()) meta.meeting_date = parse_date(trim(row[c_meeting]));
      meta.publication_date = parse_date(trim(row[c_pub]));
    } catch (const DataError& e) {
      throw DataError(manifest_path.string() + ": " + meta.doc_id + ": " + e.what());
    }
    if (meta.doc_type != DocType::kSpeech && !meta.meeting_date) {
      throw DataError(manifest_path.string() + ": " + meta.doc_id + ": meeting_date required for " +
                      std::string(to_string(meta.doc_type)));
    }
    if (meta.meeting_date && meta.publication_date < *meta.meeting_date) {
      throw DataError(manifest_path.string() + ": " + meta.doc_id +
                      ": publication_date precedes meeting_date");
    }
    if (!trim(row[c_speaker]).empty()) meta.speaker = std::string(trim(row[c_speaker]));
    std::filesystem::path path{std::string(trim(row[c_path]))};
    if (path.is_relative()) path = corpus_dir / path;
    meta.source_path = path.lexically_normal().string();
    metas.push_back(std::move(meta));
  }
  return metas;
}

}  // namespace stance_scope
