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

#include "stance_scope/score_cache.hpp"

#include <charconv>
#include <sstream>

#include "stance_scope/csv.hpp"
#include "stance_scope/errors.hpp"

namespace stance_scope {

namespace {
constexpr std::string_view kHeader = "# stance-scope score cache v1";
}

ScoreCache::ScoreCache(std::filesystem::path path) : path_(std::move(path)) {
  bool fresh = !std::filesystem::exists(path_);
  if (!fresh) {
    std::string content = read_text_file(path_);
    std::size_t start = 0;
    while (start < content.size()) {
      std::size_t nl = content.find('\n', start);
      if (nl == std::string::npos) break;  // torn trailing write
      std::string_view line(content.data() + start, nl - start);
      start = nl + 1;
      if (line.empty() || line.front() == '#') continue;
      std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos) continue;
      double value = 0.0;
      auto num = line.substr(tab + 1);
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
      if (ec != std::errc{} || ptr != num.data() + num.size() || !(value >= 0.0 && value <= 1.0)) {
        continue;
      }
      entries_[std::string(line.substr(0, tab))] = value;
    }
    fresh = start == 0;
    // Drop a torn tail so it can never be completed by a later append.
    if (start < content.size()) std::filesystem::resize_file(path_, start);
  } else if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) throw DataError("cannot open score cache '" + path_.string() + "'");
  if (fresh) out_ << kHeader << '\n' << std::flush;
}

std::optional<double> ScoreCache::lookup(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ScoreCache::append_locked(const std::string& key, double score) {
  entries_[key] = score;
  if (out_.is_open()) out_ << key << '\t' << csv::format_number(score) << '\n';
}

void ScoreCache::insert(const std::string& key, double score) {
  std::lock_guard lock(mutex_);
  append_locked(key, score);
  if (out_.is_open()) out_.flush();
}

void ScoreCache::insert_many(const std::vector<std::pair<std::string, double>>& entries) {
  std::lock_guard lock(mutex_);
  for (const auto& [key, score] : entries) append_locked(key, score);
  if (out_.is_open()) out_.flush();
}

std::size_t ScoreCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

}  // namespace stance_scope
