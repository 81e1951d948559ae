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

#include "stance_scope/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include "stance_scope/csv.hpp"

namespace stance_scope {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw ConfigError(where + " must be a list of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<DocType> doc_type_list(const json& v, const std::string& where) {
  std::vector<DocType> out;
  for (const auto& name : string_list(v, where)) {
    try {
      out.push_back(parse_doc_type(name));
    } catch (const DataError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return (path.is_relative() ? base / path : path).lexically_normal();
}

Date config_date(const std::string& text, const std::string& where) {
  try {
    return parse_date(text);
  } catch (const DataError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

BackendDescriptor parse_backend(const json& v) {
  const std::string where = "backend";
  if (!v.is_object()) throw ConfigError("backend must be an object");
  reject_unknown(v, {"kind", "endpoint", "model_name", "batch_size", "max_attempts", "initial_backoff_ms",
                     "timeout_ms"},
                 where);
  BackendDescriptor d;
  if (v.contains("kind")) d.kind = parse_backend_kind(get<std::string>(v, "kind", where));
  if (v.contains("endpoint") && !v["endpoint"].is_null()) d.endpoint = get<std::string>(v, "endpoint", where);
  if (v.contains("model_name") && !v["model_name"].is_null()) {
    d.model_name = get<std::string>(v, "model_name", where);
  }
  if (v.contains("batch_size")) {
    auto n = get<long long>(v, "batch_size", where);
    if (n < 1) throw ConfigError("backend.batch_size must be positive");
    d.batch_size = static_cast<std::size_t>(n);
  }
  if (v.contains("max_attempts")) d.max_attempts = get<int>(v, "max_attempts", where);
  if (v.contains("initial_backoff_ms")) {
    d.initial_backoff = std::chrono::milliseconds(get<long long>(v, "initial_backoff_ms", where));
  }
  if (v.contains("timeout_ms")) d.timeout = std::chrono::milliseconds(get<long long>(v, "timeout_ms", where));
  return d;
}

void parse_preprocess(const json& v, PreprocessRules& rules) {
  const std::string where = "preprocess";
  if (!v.is_object()) throw ConfigError("preprocess must be an object");
  reject_unknown(v, {"abbreviations", "roster_markers", "roster_min_names", "boilerplate_markers",
                     "chair_label_prefixes", "footer_patterns"},
                 where);
  if (v.contains("abbreviations")) rules.abbreviations = string_list(v["abbreviations"], where + ".abbreviations");
  if (v.contains("roster_markers")) rules.roster_markers = string_list(v["roster_markers"], where + ".roster_markers");
  if (v.contains("roster_min_names")) rules.roster_min_names = get<std::size_t>(v, "roster_min_names", where);
  if (v.contains("boilerplate_markers")) {
    rules.boilerplate_markers = string_list(v["boilerplate_markers"], where + ".boilerplate_markers");
  }
  if (v.contains("chair_label_prefixes")) {
    rules.chair_label_prefixes = string_list(v["chair_label_prefixes"], where + ".chair_label_prefixes");
  }
  if (v.contains("footer_patterns")) {
    rules.footer_patterns = string_list(v["footer_patterns"], where + ".footer_patterns");
    for (const auto& p : rules.footer_patterns) {
      try {
        std::regex re(p);
      } catch (const std::regex_error& e) {
        throw ConfigError("preprocess.footer_patterns: bad regex '" + p + "': " + e.what());
      }
    }
  }
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir) try {
  json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false, /*ignore_comments=*/true);
  if (root.is_discarded() || !root.is_object()) throw ConfigError("config is not a valid JSON object");
  reject_unknown(root,
                 {"corpus_dir", "manifest", "rate_history", "output_dir", "cache_path", "backend", "threshold",
                  "topic_template", "topics", "categories", "zero_rate_intervals", "count_mode", "parallelism",
                  "preprocess", "report", "oracle"},
                 "config");
  const std::string where = "config";

  RunConfig c;
  c.corpus_dir = resolve(base_dir, get<std::string>(root, "corpus_dir", where));
  c.manifest = resolve(base_dir, get<std::string>(root, "manifest", where));
  c.rate_history = resolve(base_dir, get<std::string>(root, "rate_history", where));
  c.output_dir = resolve(base_dir, get<std::string>(root, "output_dir", where));
  c.cache_path = root.contains("cache_path") ? resolve(base_dir, get<std::string>(root, "cache_path", where))
                                             : c.output_dir / "score_cache.tsv";
  if (root.contains("backend")) c.backend = parse_backend(root["backend"]);
  if (root.contains("threshold")) c.threshold = get<double>(root, "threshold", where);
  if (root.contains("topic_template")) c.topic_template = get<std::string>(root, "topic_template", where);

  if (root.contains("topics")) {
    for (const auto& t : root["topics"]) {
      reject_unknown(t, {"name", "display"}, "topics[]");
      c.topics.push_back({get<std::string>(t, "name", "topics[]"), get<std::string>(t, "display", "topics[]")});
    }
  } else {
    c.topics = default_topics();
  }

  if (root.contains("categories")) {
    for (const auto& cat : root["categories"]) {
      reject_unknown(cat, {"topic", "subject_phrase", "upward", "downward"}, "categories[]");
      c.categories.push_back({get<std::string>(cat, "topic", "categories[]"),
                              get<std::string>(cat, "subject_phrase", "categories[]"),
                              string_list(cat.at("upward"), "categories[].upward"),
                              string_list(cat.at("downward"), "categories[].downward")});
    }
  } else {
    c.categories = default_categories();
  }

  if (root.contains("zero_rate_intervals")) {
    for (const auto& iv : root["zero_rate_intervals"]) {
      if (!iv.is_array() || iv.size() != 2) {
        throw ConfigError("zero_rate_intervals entries must be [start, end] date pairs");
      }
      c.zero_rate_intervals.push_back({config_date(iv[0].get<std::string>(), "zero_rate_intervals"),
                                       config_date(iv[1].get<std::string>(), "zero_rate_intervals")});
    }
  }
  if (root.contains("count_mode")) c.count_mode = parse_count_mode(get<std::string>(root, "count_mode", where));
  if (root.contains("parallelism")) {
    auto n = get<long long>(root, "parallelism", where);
    if (n < 1) throw ConfigError("parallelism must be positive");
    c.parallelism = static_cast<std::size_t>(n);
  }
  if (root.contains("preprocess")) parse_preprocess(root["preprocess"], c.preprocess);

  if (root.contains("report")) {
    const json& r = root["report"];
    reject_unknown(r, {"phase_doc_types", "series_doc_types", "speech_window"}, "report");
    if (r.contains("phase_doc_types")) c.report.phase_doc_types = doc_type_list(r["phase_doc_types"], "report.phase_doc_types");
    if (r.contains("series_doc_types")) {
      c.report.series_doc_types = doc_type_list(r["series_doc_types"], "report.series_doc_types");
    }
    if (r.contains("speech_window")) c.report.speech_window = get<std::size_t>(r, "speech_window", "report");
  }

  if (root.contains("oracle")) {
    const json& o = root["oracle"];
    reject_unknown(o, {"subjects", "expression_aliases"}, "oracle");
    if (o.contains("subjects")) {
      for (const auto& [name, s] : o["subjects"].items()) {
        reject_unknown(s, {"keywords", "synonyms"}, "oracle.subjects." + name);
        OracleSubject subject;
        if (s.contains("keywords")) subject.keywords = string_list(s["keywords"], "oracle.subjects." + name);
        if (s.contains("synonyms")) subject.synonyms = string_list(s["synonyms"], "oracle.subjects." + name);
        c.oracle.subjects.emplace(name, std::move(subject));
      }
    }
    if (o.contains("expression_aliases")) {
      for (const auto& [expr, aliases] : o["expression_aliases"].items()) {
        c.oracle.expression_aliases.emplace(expr, string_list(aliases, "oracle.expression_aliases." + expr));
      }
    }
  }
  return c;
} catch (const json::exception& e) {
  throw ConfigError(std::string("config: ") + e.what());
}

void RunConfig::validate() const {
  validate_threshold(threshold);
  backend.validate();
  if (parallelism < 1) throw ConfigError("parallelism must be positive");
  if (topics.empty()) throw ConfigError("at least one topic is required");
  std::set<std::string> names;
  for (const auto& t : topics) {
    if (t.name.empty() || t.display_string.empty()) throw ConfigError("topics need a name and a display string");
    if (!names.insert(t.name).second) throw ConfigError("duplicate topic '" + t.name + "'");
    topic_hypothesis(t, topic_template);
  }
  std::set<std::string> seen;
  for (const auto& c : categories) {
    if (!names.count(c.category)) {
      throw ConfigError("category '" + c.category + "' does not name a configured topic");
    }
    if (!seen.insert(c.category).second) throw ConfigError("duplicate category '" + c.category + "'");
    c.validate();
  }
  if (report.speech_window == 0) throw ConfigError("report.speech_window must be positive");
}

void RunConfig::check_paths() const {
  for (const auto* p : {&corpus_dir, &manifest, &rate_history}) {
    if (!std::filesystem::exists(*p)) throw ConfigError("path does not exist: " + p->string());
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  RunConfig config = parse_run_config(text, path.parent_path());
  config.validate();
  config.check_paths();
  return config;
}

OracleLexicon build_oracle_lexicon(const RunConfig& config) {
  auto subject_for = [&](const std::string& topic_name, const std::string& fallback) {
    auto it = config.oracle.subjects.find(topic_name);
    if (it != config.oracle.subjects.end() && !it->second.keywords.empty()) return it->second;
    std::string lowered = fallback;
    for (char& ch : lowered) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    OracleSubject s;
    s.keywords = {lowered};
    if (it != config.oracle.subjects.end()) s.synonyms = it->second.synonyms;
    return s;
  };

  OracleLexicon lexicon;
  for (const auto& t : config.topics) {
    OracleSubject s = subject_for(t.name, t.display_string);
    lexicon.add(topic_hypothesis(t, config.topic_template).str(), {s.keywords, s.synonyms, {}});
  }
  for (const auto& c : config.categories) {
    OracleSubject s = subject_for(c.category, c.subject_phrase);
    for (const auto& e : render_hypotheses(c)) {
      std::vector<std::string> expression_keywords = {e.expression};
      if (auto it = config.oracle.expression_aliases.find(e.expression);
          it != config.oracle.expression_aliases.end()) {
        expression_keywords.insert(expression_keywords.end(), it->second.begin(), it->second.end());
      }
      lexicon.add(e.hypothesis.str(), {s.keywords, s.synonyms, std::move(expression_keywords)});
    }
  }
  return lexicon;
}

}  // namespace stance_scope
