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

#include "stance_scope/entailment.hpp"
#include "stance_scope/score_cache.hpp"
#include "test_support.hpp"

using namespace stance_scope;
using testing::FakeInferenceServer;

namespace {

double length_scorer(const std::string& premise, const std::string& hypothesis) {
  return static_cast<double>(premise.size() % 10) / 10.0 + static_cast<double>(hypothesis.size() % 2) / 20.0;
}

BackendDescriptor remote(const std::string& endpoint, std::size_t batch = 4) {
  BackendDescriptor d;
  d.kind = BackendKind::kRemote;
  d.endpoint = endpoint;
  d.batch_size = batch;
  d.initial_backoff = std::chrono::milliseconds(1);
  d.timeout = std::chrono::milliseconds(2000);
  return d;
}

std::vector<PremiseHypothesis> pairs(std::size_t n) {
  std::vector<PremiseHypothesis> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"Premise number " + std::string(i, 'x') + ".", i % 2 ? "Odd." : "Even!"});
  }
  return out;
}

}  // namespace

TEST_CASE("scores come back aligned and requests respect batch_size") {
  FakeInferenceServer server(length_scorer);
  RemoteBackend backend(remote(server.endpoint(), 4));
  const auto in = pairs(10);
  const auto scores = backend.score_batch(in);
  REQUIRE(scores.size() == in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    CHECK(scores[i].value() == length_scorer(in[i].premise, in[i].hypothesis));
  }
  CHECK(server.batch_sizes() == std::vector<std::size_t>{4, 4, 2});
  CHECK(backend.requests_sent() == 3);
  for (const auto& model : server.models_seen()) CHECK(model == kDefaultRemoteModel);
}

TEST_CASE("the configured model name is sent") {
  FakeInferenceServer server(length_scorer);
  auto d = remote(server.endpoint() + "/");
  d.model_name = "my-nli";
  RemoteBackend backend(d);
  backend.score_batch(pairs(1));
  CHECK(server.models_seen() == std::vector<std::string>{"my-nli"});
  CHECK(backend.model_name() == "my-nli");
}

TEST_CASE("repeated calls are identical") {
  FakeInferenceServer server(length_scorer);
  RemoteBackend backend(remote(server.endpoint()));
  CHECK(backend.score_batch(pairs(5)) == backend.score_batch(pairs(5)));
}

TEST_CASE("transient 5xx failures are retried") {
  FakeInferenceServer server(length_scorer);
  server.fail_next(2, 503);
  RemoteBackend backend(remote(server.endpoint()));
  CHECK(backend.score_batch(pairs(3)).size() == 3);
  CHECK(server.entail_requests() == 3);
}

TEST_CASE("exhausted retries raise BackendUnavailable carrying the batch") {
  FakeInferenceServer server(length_scorer);
  server.fail_next(10, 500);
  RemoteBackend backend(remote(server.endpoint(), 2));
  const auto in = pairs(3);
  try {
    backend.score_batch(in);
    FAIL("expected BackendUnavailable");
  } catch (const BackendUnavailable& e) {
    CHECK(e.batch() == std::vector<PremiseHypothesis>(in.begin(), in.begin() + 2));
  }
  CHECK(server.entail_requests() == 3);
}

TEST_CASE("an unreachable endpoint is unavailable") {
  auto d = remote(testing::unreachable_endpoint());
  d.max_attempts = 2;
  RemoteBackend backend(d);
  CHECK_THROWS_AS(backend.score_batch(pairs(1)), BackendUnavailable);
  CHECK_THROWS_AS(backend.health(), BackendUnavailable);
}

TEST_CASE("client errors are protocol errors and are not retried") {
  FakeInferenceServer server(length_scorer);
  server.fail_next(1, 413);
  RemoteBackend backend(remote(server.endpoint()));
  CHECK_THROWS_AS(backend.score_batch(pairs(1)), ProtocolError);
  CHECK(server.entail_requests() == 1);
}

TEST_CASE("malformed replies are protocol errors") {
  FakeInferenceServer server(length_scorer);
  RemoteBackend backend(remote(server.endpoint()));
  for (const char* body : {"not json", R"({"score": [0.5]})", R"({"scores": [0.5, 0.5]})",
                           R"({"scores": [1.5]})", R"({"scores": ["high"]})", R"({"scores": [-0.01]})"}) {
    CAPTURE(body);
    server.set_raw_reply(body);
    try {
      backend.score_batch(pairs(1));
      FAIL("expected ProtocolError");
    } catch (const ProtocolError& e) {
      CHECK(e.batch().size() == 1);
    }
  }
}

TEST_CASE("health reports the served model") {
  FakeInferenceServer server(length_scorer, "served-model");
  RemoteBackend backend(remote(server.endpoint()));
  CHECK(backend.health() == "served-model");
}

TEST_CASE("endpoints must be plain http") {
  CHECK_THROWS_AS(RemoteBackend(remote("https://example.org")), ConfigError);
  CHECK_THROWS_AS(RemoteBackend(remote("example.org:80")), ConfigError);
}

TEST_CASE("a remote-backed entailer fills the cache and then works offline") {
  testing::TempDir dir;
  auto server = std::make_unique<FakeInferenceServer>(length_scorer);
  const auto d = remote(server->endpoint(), 3);
  const auto in = pairs(7);
  std::vector<EntailmentScore> online;
  {
    Entailer entailer(std::make_shared<RemoteBackend>(d), std::make_shared<ScoreCache>(dir / "c.tsv"), 3);
    online = entailer.entail_pairs(in);
  }
  server.reset();
  auto offline = d;
  offline.max_attempts = 1;
  Entailer entailer(std::make_shared<RemoteBackend>(offline), std::make_shared<ScoreCache>(dir / "c.tsv"), 3);
  CHECK(entailer.entail_pairs(in) == online);
  CHECK(entailer.backend_pairs() == 0);
}

TEST_CASE("scores fetched before a failure stay cached") {
  testing::TempDir dir;
  FakeInferenceServer server(length_scorer);
  auto d = remote(server.endpoint(), 2);
  d.max_attempts = 1;
  auto cache = std::make_shared<ScoreCache>(dir / "c.tsv");
  Entailer entailer(std::make_shared<RemoteBackend>(d), cache, 2);
  entailer.entail_pairs(pairs(2));
  server.fail_next(100, 503);
  CHECK_THROWS_AS(entailer.entail_pairs(pairs(6)), BackendUnavailable);
  CHECK(cache->size() == 2);
  CHECK(ScoreCache(dir / "c.tsv").size() == 2);
}
