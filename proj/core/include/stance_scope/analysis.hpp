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

#ifndef STANCE_SCOPE_ANALYSIS_HPP_
#define STANCE_SCOPE_ANALYSIS_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stance_scope/corpus.hpp"
#include "stance_scope/date.hpp"
#include "stance_scope/errors.hpp"
#include "stance_scope/stance.hpp"

namespace stance_scope {

// ---------------------------------------------------------------------------
// Per-meeting series

struct SeriesPoint {
  Date meeting_date;
  DocType doc_type = DocType::kStatement;
  double score = 0.0;
  std::string doc_id;
};

struct MeetingSeries {
  std::string category;
  std::vector<SeriesPoint> points;  // sorted by meeting_date
};

class DuplicateMeetingDocument : public DataError {
 public:
  using DataError::DataError;
};

// One point per meeting for the given category and source; records with an
// undefined score or without a meeting date are skipped.
MeetingSeries build_series(std::span<const StanceRecord> records, std::string_view category,
                           DocType doc_type);

struct PremeetingAverage {
  double value = 0.0;
  std::size_t n_used = 0;
  bool partial = false;  // fewer than the requested n speeches were available
};

// Mean score of the n most recent speeches published strictly before the
// meeting. Speeches with an undefined score are not candidates. Ties on
// publication date are broken by doc_id for determinism.
std::optional<PremeetingAverage> speech_premeeting_average(std::span<const StanceRecord> speech_records,
                                                           std::string_view category, Date meeting_date,
                                                           std::size_t n = 5);

// ---------------------------------------------------------------------------
// Policy phases

enum class RateAction { kHike, kCut, kHold };
enum class PhaseLabel { kHike, kCut, kZeroRate, kOther };

std::string_view to_string(RateAction action);
RateAction parse_rate_action(std::string_view name);
std::string_view to_string(PhaseLabel label);
PhaseLabel parse_phase_label(std::string_view name);

struct RateEvent {
  Date effective_date;
  RateAction action = RateAction::kHold;
  int target_level_bp = 0;  // upper bound of the target range
};

// Inclusive on both ends.
struct DateInterval {
  Date start;
  Date end;
};

struct PhaseInterval {
  Date start;
  Date end;
  PhaseLabel label = PhaseLabel::kOther;
};

class OverlapError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class PhaseTimeline {
 public:
  PhaseTimeline() = default;
  explicit PhaseTimeline(std::vector<PhaseInterval> intervals);

  const std::vector<PhaseInterval>& intervals() const { return intervals_; }
  // kOther outside the covered span.
  PhaseLabel label_at(const Date& date) const;

 private:
  std::vector<PhaseInterval> intervals_;
};

// CSV with columns date, action (hike|cut|hold), level_bp. Dates must be
// strictly increasing.
std::vector<RateEvent> read_rate_history(const std::filesystem::path& path);
std::vector<RateEvent> parse_rate_history(std::string_view csv_text);

// A hike run is a maximal sequence of hikes with only holds between them;
// its interval spans first to last hike, so meetings that held the rate
// inside the run count as hike meetings. Cuts are symmetric. Configured
// zero-rate intervals take precedence over runs; everything else in the
// covered span is kOther. Throws OverlapError when zero-rate intervals are
// inverted or overlap each other, ConfigError when events are unsorted.
PhaseTimeline label_phases(std::span<const RateEvent> rate_events,
                           std::span<const DateInterval> zero_rate_intervals);

struct DatedScore {
  Date date;
  double score = 0.0;
};

class EmptyPhase : public DataError {
 public:
  using DataError::DataError;
};

// Mean of the points dated inside intervals with the given label, or of all
// points when label is nullopt. Throws EmptyPhase when nothing matches.
double periodic_average(std::span<const DatedScore> points, const PhaseTimeline& timeline,
                        std::optional<PhaseLabel> label);

// ---------------------------------------------------------------------------
// Welch two-sample t-test

enum class Alternative { kGreater, kLess, kTwoSided };

std::string_view to_string(Alternative alternative);

struct WelchResult {
  double t_stat = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  Alternative alternative = Alternative::kGreater;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double mean_a = 0.0;
  double mean_b = 0.0;
};

class DegenerateSample : public DataError {
 public:
  using DataError::DataError;
};

// Unequal-variance t statistic with Welch-Satterthwaite degrees of freedom.
// kGreater tests H1: mean_a > mean_b. Throws DegenerateSample when either
// sample has fewer than two points or both variances are zero.
WelchResult welch_t_test(std::span<const double> sample_a, std::span<const double> sample_b,
                         Alternative alternative);

}  // namespace stance_scope

#endif  // STANCE_SCOPE_ANALYSIS_HPP_
