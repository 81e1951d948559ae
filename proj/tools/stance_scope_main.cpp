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

// stance-scope: score the policy stance of central-bank documents.
//
//   stance-scope ingest|score|report|pipeline --config <path>
//       [--threshold <x>] [--backend lexical|remote] [--output <dir>]

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "stance_scope/pipeline.hpp"

int main(int argc, char** argv) {
  using namespace stance_scope;

  CLI::App app{"Zero-shot entailment stance scoring for central-bank documents"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<double> threshold;
  std::string backend;
  std::string output;

  for (const auto& [name, help] :
       {std::pair{"ingest", "parse the manifest corpus into sentence records"},
        std::pair{"score", "topic classification and stance scoring"},
        std::pair{"report", "series, phase averages and Welch t-tests"},
        std::pair{"pipeline", "ingest, score and report"}}) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "run configuration (JSON)")->required();
    sub->add_option("--threshold", threshold, "entailment threshold in (0,1)");
    sub->add_option("--backend", backend, "entailment backend")->check(CLI::IsMember({"lexical", "remote"}));
    sub->add_option("--output", output, "output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kUsage);
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig config;
  try {
    config = load_run_config(config_path);
    CliOverrides overrides;
    overrides.threshold = threshold;
    if (!backend.empty()) overrides.backend = parse_backend_kind(backend);
    if (!output.empty()) overrides.output_dir = std::filesystem::path(output);
    if (const char* endpoint = std::getenv("STANCE_SCOPE_ENDPOINT")) overrides.endpoint = endpoint;
    apply_overrides(config, overrides);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kUsage);
  }

  return static_cast<int>(run_command(command, config, std::cout, std::cerr));
}
