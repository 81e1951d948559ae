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

// Helpers shared by the unit tests and the acceptance binary.

#ifndef STANCE_SCOPE_TESTS_TEST_SUPPORT_HPP_
#define STANCE_SCOPE_TESTS_TEST_SUPPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "stance_scope/config.hpp"
#include "stance_scope/entailment.hpp"

namespace httplib {
class Server;
}

namespace stance_scope::testing {

std::filesystem::path source_dir();
std::filesystem::path data_dir();

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Backend returning scripted scores; unknown pairs get default_score.
class ScriptedBackend final : public EntailmentBackend {
 public:
  explicit ScriptedBackend(double default_score = 0.0, std::string model = "scripted")
      : default_score_(default_score), model_(std::move(model)) {}

  void set(const std::string& premise, const std::string& hypothesis, double score);

  std::string model_name() const override { return model_; }
  std::vector<EntailmentScore> score_batch(std::span<const PremiseHypothesis> pairs) override;

  std::size_t pairs_scored() const;
  std::size_t batches() const;
  std::size_t largest_batch() const;

 private:
  mutable std::mutex mutex_;
  std::map<PremiseHypothesis, double> scores_;
  double default_score_;
  std::string model_;
  std::size_t pairs_scored_ = 0;
  std::size_t batches_ = 0;
  std::size_t largest_batch_ = 0;
};

// An in-process HTTP server speaking the inference-service wire protocol.
// Scores come from `scorer`; `fail_next` makes the next n entail requests
// answer with `fail_status`.
class FakeInferenceServer {
 public:
  using Scorer = std::function<double(const std::string& premise, const std::string& hypothesis)>;

  explicit FakeInferenceServer(Scorer scorer, std::string model = "fake-nli");
  ~FakeInferenceServer();
  FakeInferenceServer(const FakeInferenceServer&) = delete;
  FakeInferenceServer& operator=(const FakeInferenceServer&) = delete;

  std::string endpoint() const;
  void stop();

  void fail_next(int n, int status = 503);
  // Raw body returned for every subsequent entail request.
  void set_raw_reply(std::optional<std::string> body);

  std::size_t entail_requests() const;
  std::vector<std::size_t> batch_sizes() const;
  std::vector<std::string> models_seen() const;

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  Scorer scorer_;
  std::string model_;

  mutable std::mutex mutex_;
  int failures_left_ = 0;
  int failure_status_ = 503;
  std::optional<std::string> raw_reply_;
  std::vector<std::size_t> batch_sizes_;
  std::vector<std::string> models_seen_;
};

// A base URL on which nothing listens.
std::string unreachable_endpoint();

// Hand-labelled segmentation fixture: paragraphs of gold sentences.
std::vector<std::vector<std::string>> load_segmentation_gold(const std::filesystem::path& path);

struct SegmentationScore {
  std::size_t gold = 0;
  std::size_t matched = 0;
  std::vector<std::string> missed;

  double accuracy() const { return gold == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(gold); }
};

SegmentationScore score_segmentation(const std::vector<std::vector<std::string>>& gold,
                                     const PreprocessRules& rules = {});

// The bundled sample configuration with every path rebased under `root`.
RunConfig sample_config();
RunConfig rebased_config(const std::filesystem::path& corpus_dir, const std::filesystem::path& output_dir);

// Deterministic uniform pick in [0, n) from raw mt19937 output, so the
// fixture is identical across standard libraries.
inline std::size_t pick(std::mt19937& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

struct PhaseFixture {
  std::size_t hike_documents = 0;
  std::size_t cut_documents = 0;
};

// Writes a 40-document minutes corpus: 20 documents dated inside the
// 2004-2006 hiking run and 20 inside the 2007-2008 cutting run of the
// bundled rate history. Hike documents lean upward, cut documents downward.
PhaseFixture write_phase_fixture(const std::filesystem::path& corpus_dir, std::uint32_t seed);

// Reads every regular file under dir into a name -> content map.
std::map<std::string, std::string> snapshot_files(const std::filesystem::path& dir,
                                                  const std::vector<std::string>& exclude = {});

}  // namespace stance_scope::testing

#endif  // STANCE_SCOPE_TESTS_TEST_SUPPORT_HPP_
