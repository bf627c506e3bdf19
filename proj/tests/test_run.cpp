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
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "wilson_lab/run.hpp"

namespace wl = wilson_lab;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto path = std::filesystem::temp_directory_path() / ("wilson_lab_test_" + name);
  std::filesystem::remove(path);
  return path;
}

}  // namespace

TEST(RunConfig, SettingsAndValidation) {
  wl::RunConfig c;
  wl::apply_setting(c, "kappa", "2, 4,8");
  wl::apply_setting(c, "degree", "12");
  wl::apply_setting(c, "group", "so");
  wl::apply_setting(c, "n", "3");
  EXPECT_EQ(c.kappa, (std::vector<double>{2.0, 4.0, 8.0}));
  EXPECT_EQ(*c.degree, 12);
  wl::apply_setting(c, "degree", "auto");
  EXPECT_FALSE(c.degree.has_value());
  c.command = wl::Command::sweep;
  EXPECT_NO_THROW(c.validate());
  wl::apply_setting(c, "kappa", "4,2");
  EXPECT_THROW(c.validate(), wl::ConfigError);
  EXPECT_THROW(wl::apply_setting(c, "samples", "-3"), wl::ConfigError);
  EXPECT_THROW(wl::apply_setting(c, "bogus", "1"), wl::ConfigError);
  EXPECT_THROW(wl::apply_setting(c, "t", "abc"), wl::ConfigError);
  EXPECT_THROW(wl::parse_command("fly"), wl::ConfigError);
  wl::RunConfig w;
  w.command = wl::Command::wilson;
  w.kappa = {2.0, 4.0};
  EXPECT_THROW(w.validate(), wl::ConfigError);
}

TEST(RunConfig, ConfigFile) {
  const auto path = temp_file("config.txt");
  {
    std::ofstream out(path);
    out << "# comment\nkappa = 16,32\nax=1\n\nt = 1  # trailing\n";
  }
  wl::RunConfig c;
  for (const auto& [k, v] : wl::read_config_file(path.string())) {
    wl::apply_setting(c, k, v);
  }
  EXPECT_EQ(c.kappa, (std::vector<double>{16.0, 32.0}));
  EXPECT_EQ(c.T, 1.0);
  {
    std::ofstream out(path);
    out << "kappa 3\n";
  }
  EXPECT_THROW(wl::read_config_file(path.string()), wl::ConfigError);
  EXPECT_THROW(wl::read_config_file("/nonexistent/wilson.cfg"), wl::ConfigError);
}

TEST(Run, PotentialCommand) {
  wl::RunConfig c;
  c.command = wl::Command::potential;
  c.group_kind = wl::GroupKind::su;
  c.n = 3;
  c.r_values = {0.0, 1.0, 2.0, 3.0};
  const wl::RunRecord rec = wl::run(c);
  const std::string csv = wl::to_csv(rec.table);
  EXPECT_EQ(csv.substr(0, 4), "R,V\n");
  EXPECT_NE(csv.find("\n3,1\n"), std::string::npos) << csv;
  EXPECT_EQ(rec.record["schema_version"], "1.0");
}

TEST(Run, NuNormCommandConverges) {
  wl::RunConfig c;
  c.command = wl::Command::nu_norm;
  c.kappa = {16.0, 32.0, 64.0};
  c.a = wl::Vec3(1.0, 0.0, 0.0);
  c.T = 1.0;
  const wl::RunRecord rec = wl::run(c);
  ASSERT_EQ(rec.table.rows.size(), 3u);
  double previous = 0.0;
  for (const auto& row : rec.table.rows) {
    const double v = std::get<double>(row[1]);
    EXPECT_GT(v, previous);
    EXPECT_LT(v, 0.25);
    EXPECT_NEAR(v, std::get<double>(row[4]), 1e-8);
    EXPECT_DOUBLE_EQ(std::get<double>(row[3]), 0.25);
    previous = v;
  }
}

TEST(Run, SelftestPasses) {
  wl::RunConfig c;
  c.command = wl::Command::selftest;
  const wl::RunRecord rec = wl::run(c);
  EXPECT_TRUE(rec.passed) << rec.record.dump(2);
}

TEST(Run, TailRefusalSuggestsFeasibleKappa) {
  wl::RunConfig c;
  c.command = wl::Command::wilson;
  c.kappa = {60.0};
  c.a = wl::Vec3(1.0, 0.0, 0.0);
  c.T = 1.0;
  try {
    wl::run(c);
    FAIL() << "expected a tail-bound refusal";
  } catch (const wl::TailBoundError& e) {
    EXPECT_NE(std::string(e.what()).find("largest feasible kappa"), std::string::npos) << e.what();
  }
}

TEST(Run, WilsonCsvIsReproducible) {
  wl::RunConfig c;
  c.command = wl::Command::sweep;
  c.kappa = {2.0, 4.0};
  c.a = wl::Vec3(0.3, 0.0, 0.0);
  c.T = 0.3;
  c.n_samples = 60;
  c.w_nodes = 16;
  const std::string a = wl::to_csv(wl::run(c).table);
  const std::string b = wl::to_csv(wl::run(c).table);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), "kappa,estimate,std_error,casimir_closed_form,oracle,area");
}

TEST(Run, RecordsAppendAndSchemaCheck) {
  const auto path = temp_file("records.jsonl");
  wl::RunConfig c;
  c.command = wl::Command::area;
  c.a = wl::Vec3(3.0, 4.0, 0.0);
  c.T = 1.0;
  const wl::RunRecord rec = wl::run(c);
  EXPECT_NEAR(rec.record["results"]["area"].get<double>(), 5.0, 1e-12);
  wl::append_record(path.string(), rec.record);
  wl::append_record(path.string(), rec.record);
  const auto records = wl::read_records(path.string());
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0]["config"]["command"], "area");
  wl::Json future = rec.record;
  future["schema_version"] = "2.0";
  EXPECT_THROW(wl::check_schema(future), wl::ConfigError);
  future.erase("schema_version");
  EXPECT_THROW(wl::check_schema(future), wl::ConfigError);
  wl::Json minor = rec.record;
  minor["schema_version"] = "1.7";
  EXPECT_NO_THROW(wl::check_schema(minor));
}

TEST(Run, NumberFormatting) {
  EXPECT_EQ(wl::format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(wl::format_number(1.0), "1");
  wl::CsvTable t{{"a", "b"}, {{1.5, wl::CsvCell{}}}};
  EXPECT_EQ(wl::to_csv(t), "a,b\n1.5,\n");
}
