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

#include <httplib.h>
#include <json.hpp>

#include <thread>

#include "stance_scope/entailment.hpp"

namespace stance_scope {

namespace {

using json = nlohmann::json;

// Splits "http://host:port/prefix" into the scheme-host-port part that
// httplib wants and a path prefix without trailing slash.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  std::size_t scheme = endpoint.find("://");
  if (scheme == std::string::npos) throw ConfigError("endpoint '" + endpoint + "' lacks a scheme");
  if (endpoint.compare(0, scheme, "http") != 0) {
    throw ConfigError("endpoint '" + endpoint + "': only http:// is supported");
  }
  std::size_t slash = endpoint.find('/', scheme + 3);
  std::string base = endpoint.substr(0, slash);
  std::string prefix = slash == std::string::npos ? "" : endpoint.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {base, prefix};
}

httplib::Client make_client(const std::string& base, std::chrono::milliseconds timeout) {
  httplib::Client client(base);
  auto secs = static_cast<time_t>(timeout.count() / 1000);
  auto usecs = static_cast<time_t>((timeout.count() % 1000) * 1000);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  return client;
}

// Thrown internally for failures worth another attempt.
struct Transient {
  std::string what;
};

}  // namespace

RemoteBackend::RemoteBackend(BackendDescriptor descriptor) : descriptor_(std::move(descriptor)) {
  descriptor_.validate();
  if (descriptor_.kind != BackendKind::kRemote) throw ConfigError("RemoteBackend needs a remote descriptor");
  std::tie(base_url_, path_prefix_) = split_endpoint(*descriptor_.endpoint);
}

std::string RemoteBackend::model_name() const { return descriptor_.effective_model_name(); }

std::vector<EntailmentScore> RemoteBackend::send_once(std::span<const PremiseHypothesis> pairs) {
  const std::vector<PremiseHypothesis> batch(pairs.begin(), pairs.end());
  json body;
  body["model"] = model_name();
  body["pairs"] = json::array();
  for (const auto& p : pairs) body["pairs"].push_back({{"premise", p.premise}, {"hypothesis", p.hypothesis}});

  auto client = make_client(base_url_, descriptor_.timeout);
  requests_sent_.fetch_add(1);
  auto res = client.Post(path_prefix_ + "/v1/entail", body.dump(), "application/json");
  if (!res) throw Transient{"connection to " + base_url_ + " failed: " + httplib::to_string(res.error())};
  if (res->status >= 500) throw Transient{"server answered HTTP " + std::to_string(res->status)};
  if (res->status != 200) {
    throw ProtocolError("server answered HTTP " + std::to_string(res->status) + ": " + res->body, batch);
  }

  json reply = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
  if (reply.is_discarded() || !reply.is_object() || !reply.contains("scores") ||
      !reply["scores"].is_array()) {
    throw ProtocolError("malformed /v1/entail reply: " + res->body.substr(0, 200), batch);
  }
  const auto& raw = reply["scores"];
  if (raw.size() != pairs.size()) {
    throw ProtocolError("reply has " + std::to_string(raw.size()) + " scores for " +
                            std::to_string(pairs.size()) + " pairs",
                        batch);
  }
  std::vector<EntailmentScore> scores;
  scores.reserve(raw.size());
  for (const auto& v : raw) {
    if (!v.is_number()) throw ProtocolError("non-numeric score in reply", batch);
    double d = v.get<double>();
    if (!(d >= 0.0 && d <= 1.0)) {
      throw ProtocolError("score out of [0,1] in reply: " + v.dump(), batch);
    }
    scores.emplace_back(d);
  }
  return scores;
}

std::vector<EntailmentScore> RemoteBackend::score_batch(std::span<const PremiseHypothesis> pairs) {
  std::vector<EntailmentScore> out;
  out.reserve(pairs.size());
  for (std::size_t begin = 0; begin < pairs.size(); begin += descriptor_.batch_size) {
    auto chunk = pairs.subspan(begin, std::min(descriptor_.batch_size, pairs.size() - begin));
    auto delay = descriptor_.initial_backoff;
    for (int attempt = 1;; ++attempt) {
      try {
        auto scores = send_once(chunk);
        out.insert(out.end(), scores.begin(), scores.end());
        break;
      } catch (const Transient& t) {
        if (attempt >= descriptor_.max_attempts) {
          throw BackendUnavailable(t.what + " (after " + std::to_string(attempt) + " attempts)",
                                   std::vector<PremiseHypothesis>(chunk.begin(), chunk.end()));
        }
        std::this_thread::sleep_for(delay);
        delay *= 2;
      }
    }
  }
  return out;
}

std::string RemoteBackend::health() const {
  auto client = make_client(base_url_, descriptor_.timeout);
  auto res = client.Get(path_prefix_ + "/v1/health");
  if (!res) throw BackendUnavailable("health check failed: " + httplib::to_string(res.error()), {});
  if (res->status != 200) {
    throw BackendUnavailable("health check answered HTTP " + std::to_string(res->status), {});
  }
  json reply = json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || reply.value("status", "") != "ok") {
    throw ProtocolError("unexpected health reply: " + res->body.substr(0, 200), {});
  }
  return reply.value("model", "");
}

}  // namespace stance_scope
