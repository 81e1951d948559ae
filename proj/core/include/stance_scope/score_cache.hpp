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

#ifndef STANCE_SCOPE_SCORE_CACHE_HPP_
#define STANCE_SCOPE_SCORE_CACHE_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stance_scope {

// Append-only persistent map from cache_key to entailment score.
//
// File format: a "# stance-scope score cache v1" header line, then one
// "<key>\t<score>" line per entry. On reload the last entry for a key
// wins; a torn final line (crash mid-write) is ignored. Writes are
// serialized and flushed per insert so that an aborted run keeps every
// score it paid for.
class ScoreCache {
 public:
  // In-memory only.
  ScoreCache() = default;
  // Loads path if it exists and appends to it from then on.
  explicit ScoreCache(std::filesystem::path path);

  ScoreCache(const ScoreCache&) = delete;
  ScoreCache& operator=(const ScoreCache&) = delete;

  std::optional<double> lookup(const std::string& key) const;
  void insert(const std::string& key, double score);
  void insert_many(const std::vector<std::pair<std::string, double>>& entries);

  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  void append_locked(const std::string& key, double score);

  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, double> entries_;
  std::ofstream out_;
};

}  // namespace stance_scope

#endif  // STANCE_SCOPE_SCORE_CACHE_HPP_
