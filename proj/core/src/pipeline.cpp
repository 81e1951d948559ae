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

#include "stance_scope/pipeline.hpp"

#include <array>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "stance_scope/csv.hpp"
#include "stance_scope/records.hpp"
#include "stance_scope/score_cache.hpp"

namespace stance_scope {

namespace {

std::string fixed4(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, 4);
  if (ec != std::errc{}) return "NA";
  std::string s(buf.data(), ptr);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

struct DocResult {
  std::vector<TopicAssignment> assignments;
  std::vector<StanceRecord> stance;
};

DocResult score_document(const Document& doc, const RunConfig& config, Entailer& entailer) {
  DocResult r;
  r.assignments = classify_document(doc, config.topics, config.threshold, entailer, config.topic_template);
  for (const auto& category : config.categories) {
    ExpressionCounts counts = count_expressions(doc, r.assignments, category, config.threshold, entailer);
    StanceRecord rec;
    rec.meta = doc.meta;
    rec.result = stance_score(counts, category, config.count_mode);
    for (const auto& c : counts.counts) rec.expression_counts.emplace_back(c.expression.expression, c.count);
    r.stance.push_back(std::move(rec));
  }
  return r;
}

}  // namespace

IngestSummary cmd_ingest(const RunConfig& config, std::ostream& log) {
  const auto metas = read_manifest(config.manifest, config.corpus_dir);
  if (metas.empty()) throw DataError("manifest '" + config.manifest.string() + "' lists no documents");

  IngestSummary summary;
  std::vector<Document> docs;
  for (const auto& meta : metas) {
    try {
      Document doc = parse_document(read_text_file(meta.source_path), meta, config.preprocess);
      for (const auto& w : doc.warnings) log << "warning: " << meta.doc_id << ": " << w << '\n';
      summary.sentences += doc.sentences.size();
      ++summary.documents_by_type[meta.doc_type];
      docs.push_back(std::move(doc));
    } catch (const DataError& e) {
      summary.failures.push_back(meta.doc_id + ": " + e.what());
      log << "warning: skipped " << meta.doc_id << ": " << e.what() << '\n';
    }
  }
  summary.documents = docs.size();
  if (docs.empty()) throw DataError("no document could be ingested");

  records::write_corpus(config.output_dir, docs);
  log << "ingested " << summary.documents << " documents, " << summary.sentences << " sentences\n";
  for (const auto& [type, n] : summary.documents_by_type) log << "  " << to_string(type) << ": " << n << '\n';
  if (!summary.failures.empty()) log << "  failed: " << summary.failures.size() << '\n';
  return summary;
}

ScoreSummary cmd_score(const RunConfig& config, std::ostream& log, std::shared_ptr<EntailmentBackend> backend) {
  const std::vector<Document> docs = records::read_corpus(config.output_dir);
  if (!backend) backend = make_backend(config.backend, build_oracle_lexicon(config));
  auto cache = std::make_shared<ScoreCache>(config.cache_path);
  Entailer entailer(backend, cache, config.backend.batch_size);

  std::vector<DocResult> results(docs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= docs.size()) return;
      try {
        results[i] = score_document(docs[i], config, entailer);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  {
    const std::size_t n_workers = std::max<std::size_t>(1, std::min(config.parallelism, docs.size()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (error) {
    log << "scoring aborted; " << cache->size() << " cached scores kept in " << config.cache_path.string()
        << '\n';
    std::rethrow_exception(error);
  }

  std::vector<TopicAssignment> assignments;
  std::vector<StanceRecord> stance;
  ScoreSummary summary;
  summary.documents = docs.size();
  for (auto& r : results) {
    summary.sentences += r.assignments.size();
    std::move(r.assignments.begin(), r.assignments.end(), std::back_inserter(assignments));
    std::move(r.stance.begin(), r.stance.end(), std::back_inserter(stance));
  }
  summary.backend_pairs = entailer.backend_pairs();
  summary.cache_hits = entailer.cache_hits();

  write_text_file(config.output_dir / records::kTopicsFile, records::format_topic_records(assignments));
  write_text_file(config.output_dir / records::kStanceFile, records::format_stance_records(stance, config.categories));
  log << "scored " << summary.documents << " documents, " << summary.sentences << " sentences ("
      << summary.backend_pairs << " backend pairs, " << summary.cache_hits << " cache hits)\n";
  return summary;
}

ReportSummary cmd_report(const RunConfig& config, std::ostream& log) {
  const auto stance = records::read_stance_records(config.output_dir / records::kStanceFile);
  const auto events = read_rate_history(config.rate_history);
  const PhaseTimeline timeline = label_phases(events, config.zero_rate_intervals);
  ReportSummary summary;
  summary.categories = config.categories.size();

  std::vector<StanceRecord> speeches;
  std::set<Date> meetings;
  for (const auto& r : stance) {
    if (r.meta.doc_type == DocType::kSpeech) {
      speeches.push_back(r);
    } else if (r.meta.meeting_date) {
      meetings.insert(*r.meta.meeting_date);
    }
  }

  // series.csv
  std::string series = csv::format_row({"category", "meeting_date", "source", "score", "n_docs", "partial"});
  for (const auto& category : config.categories) {
    for (DocType type : config.report.series_doc_types) {
      if (type == DocType::kSpeech) continue;
      for (const auto& p : build_series(stance, category.category, type).points) {
        series += csv::format_row({category.category, format_date(p.meeting_date), std::string(to_string(type)),
                                   csv::format_number(p.score), "1", "0"});
        ++summary.series_points;
      }
    }
    for (const Date& meeting : meetings) {
      auto avg = speech_premeeting_average(speeches, category.category, meeting, config.report.speech_window);
      if (!avg) continue;
      series += csv::format_row({category.category, format_date(meeting), "speech_average",
                                 csv::format_number(avg->value), std::to_string(avg->n_used),
                                 avg->partial ? "1" : "0"});
      ++summary.series_points;
    }
  }
  write_text_file(config.output_dir / "series.csv", series);

  // phases.csv
  std::string phases = csv::format_row({"start", "end", "label"});
  for (const auto& iv : timeline.intervals()) {
    phases += csv::format_row({format_date(iv.start), format_date(iv.end), std::string(to_string(iv.label))});
  }
  write_text_file(config.output_dir / "phases.csv", phases);

  // phase_summary.csv and ttest.csv
  const std::array<std::optional<PhaseLabel>, 4> columns = {std::nullopt, PhaseLabel::kHike, PhaseLabel::kCut,
                                                           PhaseLabel::kZeroRate};
  std::string table = csv::format_row({"category", "entire", "hike", "cut", "zero_rate"});
  std::string ttest =
      csv::format_row({"category", "t", "df", "p", "alternative", "n_a", "n_b", "mean_a", "mean_b"});
  for (const auto& category : config.categories) {
    std::vector<DatedScore> points;
    for (const auto& r : stance) {
      if (r.result.category != category.category || !r.result.score || !r.meta.meeting_date) continue;
      if (std::find(config.report.phase_doc_types.begin(), config.report.phase_doc_types.end(),
                    r.meta.doc_type) == config.report.phase_doc_types.end()) {
        continue;
      }
      points.push_back({*r.meta.meeting_date, *r.result.score});
    }
    csv::Row row = {category.category};
    for (const auto& label : columns) {
      try {
        row.push_back(fixed4(periodic_average(points, timeline, label)));
      } catch (const EmptyPhase&) {
        row.push_back("NA");
      }
    }
    table += csv::format_row(row);

    std::vector<double> hike, cut;
    for (const auto& p : points) {
      PhaseLabel l = timeline.label_at(p.date);
      if (l == PhaseLabel::kHike) hike.push_back(p.score);
      if (l == PhaseLabel::kCut) cut.push_back(p.score);
    }
    try {
      WelchResult w = welch_t_test(hike, cut, Alternative::kGreater);
      ttest += csv::format_row({category.category, csv::format_number(w.t_stat), csv::format_number(w.df),
                                csv::format_number(w.p_value), std::string(to_string(w.alternative)),
                                std::to_string(w.n_a), std::to_string(w.n_b), csv::format_number(w.mean_a),
                                csv::format_number(w.mean_b)});
    } catch (const DegenerateSample& e) {
      log << "warning: " << category.category << ": " << e.what() << '\n';
      ttest += csv::format_row({category.category, "NA", "NA", "NA", "greater", std::to_string(hike.size()),
                                std::to_string(cut.size()), "NA", "NA"});
    }
  }
  write_text_file(config.output_dir / "phase_summary.csv", table);
  write_text_file(config.output_dir / "ttest.csv", ttest);
  log << "report: " << summary.series_points << " series points, " << summary.categories
      << " categories, " << timeline.intervals().size() << " phase intervals\n";
  return summary;
}

void apply_overrides(RunConfig& config, const CliOverrides& overrides) {
  if (overrides.threshold) config.threshold = *overrides.threshold;
  if (overrides.backend) config.backend.kind = *overrides.backend;
  if (overrides.endpoint && !overrides.endpoint->empty()) config.backend.endpoint = *overrides.endpoint;
  if (overrides.output_dir) {
    const bool default_cache = config.cache_path == config.output_dir / "score_cache.tsv";
    config.output_dir = *overrides.output_dir;
    if (default_cache) config.cache_path = config.output_dir / "score_cache.tsv";
  }
  config.validate();
}

ExitCode run_command(std::string_view command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (command == "ingest") {
      cmd_ingest(config, out);
    } else if (command == "score") {
      cmd_score(config, out);
    } else if (command == "report") {
      cmd_report(config, out);
    } else if (command == "pipeline") {
      cmd_ingest(config, out);
      cmd_score(config, out);
      cmd_report(config, out);
    } else {
      err << "error: unknown command '" << command << "'\n";
      return ExitCode::kUsage;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return ExitCode::kUsage;
  } catch (const BackendError& e) {
    err << "backend error: " << e.what() << '\n';
    return ExitCode::kBackend;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return ExitCode::kData;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::kData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "filesystem error: " << e.what() << '\n';
    return ExitCode::kData;
  }
  return ExitCode::kOk;
}

}  // namespace stance_scope
