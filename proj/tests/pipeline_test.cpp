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

#include <set>
#include <sstream>

#include "stance_scope/csv.hpp"
#include "stance_scope/pipeline.hpp"
#include "stance_scope/records.hpp"
#include "test_support.hpp"

using namespace stance_scope;

namespace {

const char* kManifestHeader = "doc_id,doc_type,meeting_date,publication_date,speaker,path\n";

// Four statements; `broken` selects one to hold undecodable bytes.
RunConfig four_statements(const testing::TempDir& dir, std::optional<int> broken = std::nullopt) {
  const std::vector<std::string> bodies = {
      "Inflation increased. Job gains have been strong.\n",
      "Inflation moved up further. Economic growth expanded.\n",
      "Hiring rose strongly. Economic activity slowed.\n",
      "Inflation declined. Employment weakened.\n"};
  std::string manifest = kManifestHeader;
  for (int i = 0; i < 4; ++i) {
    const std::string date = "2021-0" + std::to_string(i + 1) + "-15";
    const std::string rel = "statement/s" + std::to_string(i) + ".txt";
    write_text_file(dir / ("corpus/" + rel), broken == i ? std::string("bad \xC3\x28 bytes\n") : bodies[i]);
    manifest += "s" + std::to_string(i) + ",statement," + date + "," + date + ",," + rel + "\n";
  }
  write_text_file(dir / "corpus/manifest.csv", manifest);
  return testing::rebased_config(dir / "corpus", dir / "out");
}

ExitCode run(std::string_view command, const RunConfig& config, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const ExitCode code = run_command(command, config, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("ingest of a four-document corpus") {
  testing::TempDir dir;
  const RunConfig config = four_statements(dir);
  std::ostringstream log;
  const auto summary = cmd_ingest(config, log);
  CHECK(summary.documents == 4);
  CHECK(summary.sentences == 8);
  CHECK(summary.documents_by_type.at(DocType::kStatement) == 4);
  CHECK(summary.failures.empty());
  CHECK(log.str().find("statement: 4") != std::string::npos);
}

TEST_CASE("one malformed file is skipped with a warning") {
  testing::TempDir dir;
  const RunConfig config = four_statements(dir, 2);
  std::ostringstream log;
  const auto summary = cmd_ingest(config, log);
  CHECK(summary.documents == 3);
  REQUIRE(summary.failures.size() == 1);
  CHECK(summary.failures[0].rfind("s2:", 0) == 0);
  CHECK(log.str().find("warning: skipped s2") != std::string::npos);
  CHECK(run("ingest", config) == ExitCode::kOk);
}

TEST_CASE("an empty manifest is a data error") {
  testing::TempDir dir;
  RunConfig config = four_statements(dir);
  write_text_file(config.manifest, kManifestHeader);
  std::string err;
  CHECK(run("ingest", config, &err) == ExitCode::kData);
  CHECK(err.find("lists no documents") != std::string::npos);
}

TEST_CASE("a corpus where every document fails is a data error") {
  testing::TempDir dir;
  RunConfig config = four_statements(dir);
  write_text_file(config.manifest, std::string(kManifestHeader) + "x,statement,2021-01-01,2021-01-01,,missing.txt\n");
  CHECK(run("ingest", config) == ExitCode::kData);
}

TEST_CASE("scoring before ingest is a data error and unknown commands are usage errors") {
  testing::TempDir dir;
  const RunConfig config = four_statements(dir);
  CHECK(run("score", config) == ExitCode::kData);
  CHECK(run("report", config) == ExitCode::kData);
  CHECK(run("frobnicate", config) == ExitCode::kUsage);
}

TEST_CASE("scoring is deterministic and a higher threshold gives a subset") {
  testing::TempDir dir;
  RunConfig config = four_statements(dir);
  REQUIRE(run("ingest", config) == ExitCode::kOk);
  REQUIRE(run("score", config) == ExitCode::kOk);
  const std::string topics_first = read_text_file(config.output_dir / records::kTopicsFile);
  const std::string stance_first = read_text_file(config.output_dir / records::kStanceFile);
  config.parallelism = 1;
  REQUIRE(run("score", config) == ExitCode::kOk);
  CHECK(read_text_file(config.output_dir / records::kTopicsFile) == topics_first);
  CHECK(read_text_file(config.output_dir / records::kStanceFile) == stance_first);

  // "Hiring rose strongly." reaches JobGain only through a synonym (0.97).
  CHECK(topics_first.find("s2,0,JobGain,0.97,1") != std::string::npos);

  RunConfig strict = config;
  CliOverrides overrides;
  overrides.threshold = 0.99;
  apply_overrides(strict, overrides);
  REQUIRE(run("score", strict) == ExitCode::kOk);
  const auto table_at = [](const std::string& text) {
    const auto t = csv::parse_table(text);
    std::set<std::string> assigned;
    for (const auto& row : t.rows) {
      if (row[t.column("assigned")] == "1") {
        assigned.insert(row[t.column("doc_id")] + "/" + row[t.column("sentence_index")] + "/" + row[t.column("topic")]);
      }
    }
    return assigned;
  };
  const auto loose = table_at(topics_first);
  const auto tight = table_at(read_text_file(strict.output_dir / records::kTopicsFile));
  CHECK(tight.size() < loose.size());
  for (const auto& key : tight) CHECK(loose.count(key) == 1);
}

TEST_CASE("a warm cache lets scoring finish while the service is down") {
  testing::TempDir dir;
  RunConfig config = four_statements(dir);
  REQUIRE(run("ingest", config) == ExitCode::kOk);

  const OracleLexicon lexicon = build_oracle_lexicon(config);
  auto server = std::make_unique<testing::FakeInferenceServer>(
      [&](const std::string& p, const std::string& h) { return lexical_oracle_score(p, h, lexicon).value(); });
  config.backend.kind = BackendKind::kRemote;
  config.backend.endpoint = server->endpoint();
  config.backend.initial_backoff = std::chrono::milliseconds(1);
  config.backend.max_attempts = 2;
  REQUIRE(run("score", config) == ExitCode::kOk);
  const std::string stance_online = read_text_file(config.output_dir / records::kStanceFile);
  server.reset();

  std::ostringstream log;
  const auto summary = cmd_score(config, log);
  CHECK(summary.backend_pairs == 0);
  CHECK(summary.cache_hits > 0);
  CHECK(read_text_file(config.output_dir / records::kStanceFile) == stance_online);

  // A cold cache with the service down is a backend error.
  config.cache_path = dir / "cold.tsv";
  std::string err;
  CHECK(run("score", config, &err) == ExitCode::kBackend);
  CHECK(err.find("backend error") != std::string::npos);
}

TEST_CASE("report output shapes") {
  testing::TempDir dir;
  RunConfig config = testing::rebased_config(testing::data_dir() / "sample_corpus", dir / "out");
  REQUIRE(run("pipeline", config) == ExitCode::kOk);
  const auto summary = csv::read_table(config.output_dir / "phase_summary.csv");
  CHECK(summary.header == csv::Row{"category", "entire", "hike", "cut", "zero_rate"});
  CHECK(summary.rows.size() == 3);
  const auto ttest = csv::read_table(config.output_dir / "ttest.csv");
  CHECK(ttest.rows.size() == 3);
  // The sample has no cut-phase minutes: those cells are NA, not failures.
  for (const auto& row : summary.rows) CHECK(row[summary.column("cut")] == "NA");
  for (const auto& row : ttest.rows) CHECK(row[ttest.column("p")] == "NA");

  const auto series = csv::read_table(config.output_dir / "series.csv");
  bool speech_rows = false;
  for (const auto& row : series.rows) speech_rows |= row[series.column("source")] == "speech_average";
  CHECK(speech_rows);
  const auto phases = csv::read_table(config.output_dir / "phases.csv");
  CHECK(phases.rows.front()[0] == "1971-01-12");

  RunConfig single = config;
  single.categories.resize(1);
  REQUIRE(run("score", single) == ExitCode::kOk);
  REQUIRE(run("report", single) == ExitCode::kOk);
  CHECK(csv::read_table(single.output_dir / "phase_summary.csv").rows.size() == 1);
}

TEST_CASE("overrides") {
  RunConfig config = testing::sample_config();
  CliOverrides o;
  o.output_dir = "/tmp/elsewhere";
  o.backend = BackendKind::kRemote;
  o.endpoint = "http://10.0.0.1:9000";
  apply_overrides(config, o);
  CHECK(config.cache_path == std::filesystem::path("/tmp/elsewhere/score_cache.tsv"));
  CHECK(config.backend.endpoint == std::optional<std::string>("http://10.0.0.1:9000"));

  RunConfig bad = testing::sample_config();
  CliOverrides t;
  t.threshold = 1.5;
  CHECK_THROWS_AS(apply_overrides(bad, t), ConfigError);
}
