// Copyright 2026 The Wilson Lab Authors
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
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "wilson_lab/run.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;

// CLI flag name -> RunConfig setting key, in application order
const std::vector<std::pair<std::string, std::string>> kFlags = {
    {"group", "group kind: su or so"},
    {"n", "matrix size N of su(N) / so(N)"},
    {"kappa", "resolution kappa, or a strictly increasing comma list"},
    {"ax", "spatial edge a, x component"},
    {"ay", "spatial edge a, y component"},
    {"az", "spatial edge a, z component"},
    {"t", "time extent T"},
    {"degree", "Fock degree D, or 'auto'"},
    {"tail-eps", "truncation tail tolerance"},
    {"samples", "number of field samples"},
    {"w-nodes", "number of w-grid nodes"},
    {"seed", "64-bit seed"},
    {"c-tilde", "renormalization constant"},
    {"r", "comma list of R values for the potential"},
    {"out", "append the JSON-lines record to this file"},
    {"csv", "also write the CSV table to this file"},
    {"format", "stdout format: csv or jsonl"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wilson-loop laboratory: Lie algebras, Fock-space duals, Monte-Carlo Yang-Mills estimates"};
  std::string command;
  std::string config_path;
  std::map<std::string, std::string> values;
  app.add_option("command", command, "algebra | area | nu-norm | wilson | sweep | potential | probe | selftest")
      ->required();
  app.add_option("--config", config_path, "key=value file; flags given on the command line win");
  for (const auto& [name, help] : kFlags) {
    app.add_option("--" + name, values[name], help);
  }
  CLI11_PARSE(app, argc, argv);

  try {
    wilson_lab::RunConfig config;
    if (!config_path.empty()) {
      for (const auto& [key, value] : wilson_lab::read_config_file(config_path)) {
        wilson_lab::apply_setting(config, key, value);
      }
    }
    config.command = wilson_lab::parse_command(command);
    for (const auto& [name, help] : kFlags) {
      if (app.count("--" + name) > 0) {
        wilson_lab::apply_setting(config, name, values[name]);
      }
    }

    const wilson_lab::RunRecord record = wilson_lab::run(config);
    if (!config.out_path.empty()) {
      wilson_lab::append_record(config.out_path, record.record);
    }
    const std::string csv = wilson_lab::to_csv(record.table);
    if (!config.csv_path.empty()) {
      std::ofstream file(config.csv_path);
      if (!file) {
        throw wilson_lab::ConfigError("cannot write CSV file '" + config.csv_path + "'");
      }
      file << csv;
    }
    if (config.format == wilson_lab::OutputFormat::csv) {
      std::cout << csv;
    } else {
      std::cout << record.record.dump() << '\n';
    }
    return record.passed ? 0 : kExitTolerance;
  } catch (const wilson_lab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const wilson_lab::ToleranceError& e) {
    std::cerr << "tolerance error: " << e.what() << '\n';
    return kExitTolerance;
  }
}
