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

#ifndef STANCE_SCOPE_CONFIG_HPP_
#define STANCE_SCOPE_CONFIG_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stance_scope/analysis.hpp"
#include "stance_scope/corpus.hpp"
#include "stance_scope/entailment.hpp"
#include "stance_scope/stance.hpp"
#include "stance_scope/topics.hpp"

namespace stance_scope {

// Keyword hints that drive the lexical oracle backend. Ignored by the
// remote backend.
struct OracleSubject {
  std::vector<std::string> keywords;
  std::vector<std::string> synonyms;
};

struct OracleHints {
  std::map<std::string, OracleSubject> subjects;                      // by topic name
  std::map<std::string, std::vector<std::string>> expression_aliases;  // by expression
};

struct ReportConfig {
  // Sources pooled for the phase table and the Welch test.
  std::vector<DocType> phase_doc_types = {DocType::kMinutes};
  // Sources emitted as per-meeting series (speeches are averaged instead).
  std::vector<DocType> series_doc_types = {DocType::kStatement, DocType::kMinutes,
                                           DocType::kPressConference};
  std::size_t speech_window = 5;
};

struct RunConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path manifest;
  std::filesystem::path rate_history;
  std::filesystem::path output_dir;
  std::filesystem::path cache_path;  // defaults to <output_dir>/score_cache.tsv
  BackendDescriptor backend;
  double threshold = kDefaultThreshold;
  std::string topic_template{kDefaultTopicTemplate};
  std::vector<Topic> topics;
  std::vector<CategoryConfig> categories;
  std::vector<DateInterval> zero_rate_intervals;
  CountMode count_mode = CountMode::kPerExpression;
  std::size_t parallelism = 1;
  PreprocessRules preprocess;
  ReportConfig report;
  OracleHints oracle;

  // Threshold in (0,1), category topics among the configured topics, every
  // category valid, parallelism >= 1, backend descriptor valid.
  void validate() const;
  // Input paths (corpus_dir, manifest, rate_history) must exist.
  void check_paths() const;
};

// JSON config. Relative paths resolve against base_dir. Unknown keys are
// rejected so that typos do not silently fall back to defaults.
RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir);
// parse_run_config + validate + check_paths.
RunConfig load_run_config(const std::filesystem::path& path);

// Lexicon covering every topic and category hypothesis of the config.
OracleLexicon build_oracle_lexicon(const RunConfig& config);

}  // namespace stance_scope

#endif  // STANCE_SCOPE_CONFIG_HPP_
