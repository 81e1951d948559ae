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

#include "stance_scope/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include "stance_scope/csv.hpp"
#include "stance_scope/student_t.hpp"

namespace stance_scope {

MeetingSeries build_series(std::span<const StanceRecord> records, std::string_view category,
                           DocType doc_type) {
  MeetingSeries series{std::string(category), {}};
  std::map<Date, const StanceRecord*> by_meeting;
  for (const auto& r : records) {
    if (r.meta.doc_type != doc_type || r.result.category != category || !r.meta.meeting_date) continue;
    auto [it, inserted] = by_meeting.emplace(*r.meta.meeting_date, &r);
    if (!inserted) {
      throw DuplicateMeetingDocument(std::string(to_string(doc_type)) + " documents '" +
                                     it->second->meta.doc_id + "' and '" + r.meta.doc_id +
                                     "' share meeting " + format_date(*r.meta.meeting_date));
    }
  }
  for (const auto& [date, r] : by_meeting) {
    if (!r->result.score) continue;
    series.points.push_back({date, doc_type, *r->result.score, r->meta.doc_id});
  }
  return series;
}

std::optional<PremeetingAverage> speech_premeeting_average(std::span<const StanceRecord> speech_records,
                                                           std::string_view category, Date meeting_date,
                                                           std::size_t n) {
  std::vector<const StanceRecord*> candidates;
  for (const auto& r : speech_records) {
    if (r.result.category != category || !r.result.score) continue;
    if (!(r.meta.publication_date < meeting_date)) continue;
    candidates.push_back(&r);
  }
  if (candidates.empty() || n == 0) return std::nullopt;
  std::sort(candidates.begin(), candidates.end(), [](const StanceRecord* a, const StanceRecord* b) {
    if (a->meta.publication_date != b->meta.publication_date) {
      return b->meta.publication_date < a->meta.publication_date;
    }
    return a->meta.doc_id < b->meta.doc_id;
  });
  const std::size_t used = std::min(n, candidates.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < used; ++i) sum += *candidates[i]->result.score;
  return PremeetingAverage{sum / static_cast<double>(used), used, used < n};
}

std::string_view to_string(RateAction action) {
  switch (action) {
    case RateAction::kHike: return "hike";
    case RateAction::kCut: return "cut";
    case RateAction::kHold: return "hold";
  }
  return "hold";
}

RateAction parse_rate_action(std::string_view name) {
  if (name == "hike") return RateAction::kHike;
  if (name == "cut") return RateAction::kCut;
  if (name == "hold") return RateAction::kHold;
  throw DataError("unknown rate action '" + std::string(name) + "'");
}

std::string_view to_string(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::kHike: return "hike";
    case PhaseLabel::kCut: return "cut";
    case PhaseLabel::kZeroRate: return "zero_rate";
    case PhaseLabel::kOther: return "other";
  }
  return "other";
}

PhaseLabel parse_phase_label(std::string_view name) {
  if (name == "hike") return PhaseLabel::kHike;
  if (name == "cut") return PhaseLabel::kCut;
  if (name == "zero_rate") return PhaseLabel::kZeroRate;
  if (name == "other") return PhaseLabel::kOther;
  throw ConfigError("unknown phase label '" + std::string(name) + "'");
}

PhaseTimeline::PhaseTimeline(std::vector<PhaseInterval> intervals) : intervals_(std::move(intervals)) {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (intervals_[i].end < intervals_[i].start) throw ConfigError("phase interval ends before it starts");
    if (i && !(intervals_[i - 1].end < intervals_[i].start)) {
      throw OverlapError("phase intervals overlap or are unsorted");
    }
  }
}

PhaseLabel PhaseTimeline::label_at(const Date& date) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), date,
                             [](const Date& d, const PhaseInterval& iv) { return d < iv.start; });
  if (it == intervals_.begin()) return PhaseLabel::kOther;
  --it;
  return date <= it->end ? it->label : PhaseLabel::kOther;
}

std::vector<RateEvent> parse_rate_history(std::string_view csv_text) {
  csv::Table table = csv::parse_table(csv_text);
  const auto c_date = table.column("date");
  const auto c_action = table.column("action");
  const auto c_level = table.column("level_bp");
  std::vector<RateEvent> events;
  events.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    RateEvent e;
    e.effective_date = parse_date(row[c_date]);
    e.action = parse_rate_action(row[c_action]);
    const std::string& level = row[c_level];
    auto [ptr, ec] = std::from_chars(level.data(), level.data() + level.size(), e.target_level_bp);
    if (ec != std::errc{} || ptr != level.data() + level.size()) {
      throw DataError("invalid level_bp '" + level + "' on " + row[c_date]);
    }
    if (!events.empty() && !(events.back().effective_date < e.effective_date)) {
      throw DataError("rate history dates must be strictly increasing at " + row[c_date]);
    }
    events.push_back(e);
  }
  return events;
}

std::vector<RateEvent> read_rate_history(const std::filesystem::path& path) {
  try {
    return parse_rate_history(read_text_file(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

PhaseTimeline label_phases(std::span<const RateEvent> rate_events,
                           std::span<const DateInterval> zero_rate_intervals) {
  for (std::size_t i = 1; i < rate_events.size(); ++i) {
    if (!(rate_events[i - 1].effective_date < rate_events[i].effective_date)) {
      throw ConfigError("rate events must be sorted by strictly increasing date");
    }
  }
  std::vector<DateInterval> zeros(zero_rate_intervals.begin(), zero_rate_intervals.end());
  std::sort(zeros.begin(), zeros.end(), [](const auto& a, const auto& b) { return a.start < b.start; });
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (zeros[i].end < zeros[i].start) {
      throw OverlapError("zero-rate interval " + format_date(zeros[i].start) + ".." +
                         format_date(zeros[i].end) + " is inverted");
    }
    if (i && !(zeros[i - 1].end < zeros[i].start)) {
      throw OverlapError("zero-rate intervals overlap at " + format_date(zeros[i].start));
    }
  }
  if (rate_events.empty() && zeros.empty()) return PhaseTimeline{};

  // Runs of same-direction actions; holds never break a run.
  std::vector<PhaseInterval> runs;
  for (const auto& e : rate_events) {
    if (e.action == RateAction::kHold) continue;
    PhaseLabel label = e.action == RateAction::kHike ? PhaseLabel::kHike : PhaseLabel::kCut;
    if (!runs.empty() && runs.back().label == label) {
      runs.back().end = e.effective_date;
    } else {
      runs.push_back({e.effective_date, e.effective_date, label});
    }
  }

  Date span_start = !rate_events.empty() ? rate_events.front().effective_date : zeros.front().start;
  Date span_end = !rate_events.empty() ? rate_events.back().effective_date : zeros.back().end;
  if (!zeros.empty()) {
    span_start = std::min(span_start, zeros.front().start);
    span_end = std::max(span_end, zeros.back().end);
  }

  // Base layer: runs with kOther filling the gaps.
  std::vector<PhaseInterval> base;
  Date cursor = span_start;
  for (const auto& run : runs) {
    if (cursor < run.start) base.push_back({cursor, add_days(run.start, -1), PhaseLabel::kOther});
    base.push_back(run);
    cursor = add_days(run.end, 1);
  }
  if (cursor <= span_end) base.push_back({cursor, span_end, PhaseLabel::kOther});

  // Overlay zero-rate intervals.
  std::vector<PhaseInterval> out;
  auto emit = [&](PhaseInterval iv) {
    if (iv.end < iv.start) return;
    if (!out.empty() && out.back().label == iv.label && add_days(out.back().end, 1) == iv.start) {
      out.back().end = iv.end;
    } else {
      out.push_back(iv);
    }
  };
  std::size_t z = 0;
  for (const auto& seg : base) {
    Date pos = seg.start;
    while (!(seg.end < pos)) {
      while (z < zeros.size() && zeros[z].end < pos) ++z;
      if (z < zeros.size() && zeros[z].start <= pos) {
        Date stop = std::min(seg.end, zeros[z].end);
        emit({pos, stop, PhaseLabel::kZeroRate});
        pos = add_days(stop, 1);
      } else if (z < zeros.size() && zeros[z].start <= seg.end) {
        emit({pos, add_days(zeros[z].start, -1), seg.label});
        pos = zeros[z].start;
      } else {
        emit({pos, seg.end, seg.label});
        break;
      }
    }
  }
  return PhaseTimeline(std::move(out));
}

double periodic_average(std::span<const DatedScore> points, const PhaseTimeline& timeline,
                        std::optional<PhaseLabel> label) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : points) {
    if (label && timeline.label_at(p.date) != *label) continue;
    sum += p.score;
    ++n;
  }
  if (n == 0) {
    throw EmptyPhase("no scores in phase '" + std::string(label ? to_string(*label) : "all") + "'");
  }
  return sum / static_cast<double>(n);
}

std::string_view to_string(Alternative alternative) {
  switch (alternative) {
    case Alternative::kGreater: return "greater";
    case Alternative::kLess: return "less";
    case Alternative::kTwoSided: return "two_sided";
  }
  return "two_sided";
}

namespace {

struct Moments {
  double mean;
  double variance;  // unbiased
};

Moments moments(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, ss / (n - 1.0)};
}

}  // namespace

WelchResult welch_t_test(std::span<const double> sample_a, std::span<const double> sample_b,
                         Alternative alternative) {
  if (sample_a.size() < 2 || sample_b.size() < 2) {
    throw DegenerateSample("Welch t-test needs at least two points per sample (got " +
                           std::to_string(sample_a.size()) + " and " + std::to_string(sample_b.size()) + ")");
  }
  const Moments a = moments(sample_a);
  const Moments b = moments(sample_b);
  if (a.variance == 0.0 && b.variance == 0.0) {
    throw DegenerateSample("Welch t-test: both samples have zero variance");
  }
  const double na = static_cast<double>(sample_a.size());
  const double nb = static_cast<double>(sample_b.size());
  const double va = a.variance / na;
  const double vb = b.variance / nb;

  WelchResult r;
  r.alternative = alternative;
  r.n_a = sample_a.size();
  r.n_b = sample_b.size();
  r.mean_a = a.mean;
  r.mean_b = b.mean;
  r.t_stat = (a.mean - b.mean) / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));

  const double upper = stats::student_t_sf(r.t_stat, r.df);
  switch (alternative) {
    case Alternative::kGreater:
      r.p_value = upper;
      break;
    case Alternative::kLess:
      r.p_value = stats::student_t_sf(-r.t_stat, r.df);
      break;
    case Alternative::kTwoSided:
      r.p_value = std::min(1.0, 2.0 * std::min(upper, stats::student_t_sf(-r.t_stat, r.df)));
      break;
  }
  return r;
}

}  // namespace stance_scope
