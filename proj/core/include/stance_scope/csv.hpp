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

#ifndef STANCE_SCOPE_CSV_HPP_
#define STANCE_SCOPE_CSV_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace stance_scope::csv {

using Row = std::vector<std::string>;

// RFC-4180 quoting: fields containing a comma, quote, CR or LF are quoted
// and embedded quotes doubled. Rows are always LF-terminated.
std::string escape_field(std::string_view field);
std::string format_row(const Row& row);

// Parses RFC-4180 text. Accepts CRLF or LF line endings; a trailing newline
// does not produce an empty row. Throws DataError on an unterminated quote.
std::vector<Row> parse(std::string_view text);

struct Table {
  Row header;
  std::vector<Row> rows;

  std::optional<std::size_t> find_column(std::string_view name) const;
  // Throws DataError when the column is missing.
  std::size_t column(std::string_view name) const;
};

// First row becomes the header. Rows whose width differs from the header
// are rejected with DataError.
Table parse_table(std::string_view text);
Table read_table(const std::filesystem::path& path);

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void write_row(const Row& row) { out_ << format_row(row); }

 private:
  std::ostream& out_;
};

// Shortest round-trip decimal form; identical across IEEE-754 platforms.
std::string format_number(double value);

}  // namespace stance_scope::csv

namespace stance_scope {

// Whole-file helpers. Reads are binary; writes go through a temporary file
// in the same directory and are renamed into place.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace stance_scope

#endif  // STANCE_SCOPE_CSV_HPP_
