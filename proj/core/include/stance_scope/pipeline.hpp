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

#ifndef STANCE_SCOPE_PIPELINE_HPP_
#define STANCE_SCOPE_PIPELINE_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "stance_scope/config.hpp"

namespace stance_scope {

// CLI exit codes.
enum class ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kBackend = 3 };

struct IngestSummary {
  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::map<DocType, std::size_t> documents_by_type;
  std::vector<std::string> failures;  // "doc_id: reason"
};

// Parses every manifest document and writes documents.csv / sentences.csv
// into output_dir. Per-document failures are collected and reported; a
// DataError is thrown only when the manifest is empty or nothing parsed.
IngestSummary cmd_ingest(const RunConfig& config, std::ostream& log);

struct ScoreSummary {
  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::size_t backend_pairs = 0;
  std::size_t cache_hits = 0;
};

// Topic classification, expression counting and stance scoring over the
// ingested corpus; writes topics.csv and stance.csv. Scores go through the
// persistent cache, so a run aborted by BackendUnavailable resumes where it
// stopped. backend overrides the one described by the config (tests).
ScoreSummary cmd_score(const RunConfig& config, std::ostream& log,
                       std::shared_ptr<EntailmentBackend> backend = nullptr);

struct ReportSummary {
  std::size_t series_points = 0;
  std::size_t categories = 0;
};

// series.csv, phases.csv, phase_summary.csv and ttest.csv from stance.csv
// and the rate history.
ReportSummary cmd_report(const RunConfig& config, std::ostream& log);

struct CliOverrides {
  std::optional<double> threshold;
  std::optional<BackendKind> backend;
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::string> endpoint;  // from STANCE_SCOPE_ENDPOINT
};

// Applies overrides and re-validates. The cache path follows a moved
// output_dir unless it was configured explicitly elsewhere.
void apply_overrides(RunConfig& config, const CliOverrides& overrides);

// Runs ingest | score | report | pipeline and maps exceptions onto exit
// codes, printing the message to err.
ExitCode run_command(std::string_view command, const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace stance_scope

#endif  // STANCE_SCOPE_PIPELINE_HPP_
