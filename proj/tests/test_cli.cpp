// Copyright 2026 The qbd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "process.hpp"

namespace qbd {
namespace {

using nlohmann::json;
using testing::cli;
using testing::run_command;

std::string fixture() { return testing::models_dir() + "/fixture_decision.json"; }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("qbd_cli_test_" + name);
  std::ofstream(path) << content;
  return path;
}

TEST(Validate, FixtureIsValid) {
  auto r = run_command(cli() + " validate --model " + fixture());
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("valid"), std::string::npos);
}

TEST(Validate, BrokenRowNamesNode) {
  auto path = temp_file("broken.json", R"({"nodes": [
      {"name": "Rain", "arity": 2, "cpt": [[0.6, 0.6]]}]})");
  auto r = run_command(cli() + " validate --model " + path.string(), true);
  EXPECT_EQ(r.status, 1) << r.out;
  EXPECT_NE(r.out.find("Rain"), std::string::npos) << r.out;
}

TEST(Validate, MissingFileIsIoError) {
  auto r = run_command(cli() + " validate --model /nonexistent/model.json", true);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("I/O"), std::string::npos) << r.out;
}

TEST(Infer, ExactTable) {
  auto r = run_command(cli() + " infer --model " + fixture() + " --query R --evidence L=false A=0");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("0.7"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("0.3"), std::string::npos) << r.out;
}

TEST(Infer, QuantumJsonMatchesExact) {
  auto r = run_command(cli() + " infer --model " + fixture() +
                       " --query R --evidence L=false A=0 --method quantum --shots 10000 --seed 7 --format json");
  ASSERT_EQ(r.status, 0) << r.out;
  json j = json::parse(r.out);
  double p0 = j["distribution"][0]["probability"];
  double p1 = j["distribution"][1]["probability"];
  EXPECT_LE(0.5 * (std::abs(p0 - 0.7) + std::abs(p1 - 0.3)), 0.03);
  EXPECT_EQ(j["metadata"]["shots"], 10000);
  auto again = run_command(cli() + " infer --model " + fixture() +
                           " --query R --evidence L=false A=0 --method quantum --shots 10000 --seed 7 --format json");
  EXPECT_EQ(again.out, r.out);
}

TEST(Infer, JsonRoundTripsNumbers) {
  auto r = run_command(cli() + " infer --model " + fixture() + " --query R --format json");
  ASSERT_EQ(r.status, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["distribution"][0]["probability"].get<double>(), 0.5);
  EXPECT_EQ(json::parse(j.dump(2)), j);
}

TEST(Infer, CsvAndRejection) {
  auto r = run_command(cli() + " infer --model " + fixture() +
                       " --query R --method rejection --shots 50000 --seed 1 --format csv");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("value,probability\n", 0), 0u) << r.out;
}

TEST(Infer, Errors) {
  EXPECT_EQ(run_command(cli() + " infer --model " + fixture() + " --query L").status, 1);
  EXPECT_EQ(run_command(cli() + " infer --model " + fixture() + " --query Nope").status, 1);
  EXPECT_EQ(run_command(cli() + " infer --model " + fixture() + " --query R --evidence L").status, 2);
  EXPECT_EQ(run_command(cli() + " infer --model " + fixture()).status, 2);

  auto zero = temp_file("zero.json", R"({"nodes": [
      {"name": "A", "arity": 2, "cpt": [[1.0, 0.0]]},
      {"name": "B", "arity": 2, "parents": ["A"], "cpt": [[0.5, 0.5], [0.5, 0.5]]}]})");
  auto r = run_command(cli() + " infer --model " + zero.string() + " --query B --evidence A=1", true);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("zero"), std::string::npos) << r.out;
}

TEST(Decide, ProcessAExact) {
  auto r = run_command(cli() + " decide --model " + fixture() + " --process a --exact --format json");
  ASSERT_EQ(r.status, 0) << r.out;
  json j = json::parse(r.out);
  EXPECT_EQ(j["chosen_action"], "Action_0");
  EXPECT_NEAR(j["action_distribution"][0]["probability"].get<double>(), 0.58, 1e-9);
  EXPECT_NEAR(j["action_distribution"][1]["probability"].get<double>(), 0.42, 1e-9);
}

TEST(Decide, ProcessBAndClassicalAgree) {
  auto b = run_command(cli() + " decide --model " + fixture() + " --process b --shots 100000 --seed 1 --format json");
  ASSERT_EQ(b.status, 0) << b.out;
  json jb = json::parse(b.out);
  EXPECT_EQ(jb["chosen_action"], "Action_0");
  EXPECT_NEAR(jb["expected_utilities"][0]["expected_utility"].get<double>(), 5.8, 0.05);
  EXPECT_NEAR(jb["expected_utilities"][1]["expected_utility"].get<double>(), 4.2, 0.05);

  auto c = run_command(cli() + " decide --model " + fixture() + " --process classical --format json");
  ASSERT_EQ(c.status, 0);
  EXPECT_EQ(json::parse(c.out)["chosen_action"], "Action_0");
}

TEST(Decide, PlotData) {
  auto path = std::filesystem::temp_directory_path() / "qbd_cli_test_plot.csv";
  std::filesystem::remove(path);
  auto r = run_command(cli() + " decide --model " + fixture() + " --process a --exact --plot-data " + path.string());
  ASSERT_EQ(r.status, 0);
  std::ifstream in(path);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  EXPECT_EQ(header, "label,probability");
  ASSERT_EQ(first.rfind("Action_0,", 0), 0u) << first;
  ASSERT_EQ(second.rfind("Action_1,", 0), 0u) << second;
  EXPECT_NEAR(std::stod(first.substr(9)), 0.58, 1e-9);
  EXPECT_NEAR(std::stod(second.substr(9)), 0.42, 1e-9);
}

TEST(Decide, NonUniformPriorNeedsForce) {
  auto path = temp_file("prior.json", R"({"nodes": [
      {"name": "A", "arity": 2, "cpt": [[0.7, 0.3]]},
      {"name": "R", "arity": 2, "parents": ["A"], "cpt": [[0.9, 0.1], [0.2, 0.8]]}],
      "action": "A", "outcome": "R", "utility": [1, 0]})");
  EXPECT_EQ(run_command(cli() + " decide --model " + path.string() + " --exact").status, 1);
  auto forced = run_command(cli() + " decide --model " + path.string() + " --exact --force", true);
  EXPECT_EQ(forced.status, 0) << forced.out;
  EXPECT_NE(forced.out.find("warning"), std::string::npos);
}

TEST(Decide, NegativeUtilityNeedsShift) {
  auto path = temp_file("negative.json", R"({"nodes": [
      {"name": "A", "arity": 2, "cpt": [[0.5, 0.5]]},
      {"name": "R", "arity": 2, "parents": ["A"], "cpt": [[0.9, 0.1], [0.2, 0.8]]}],
      "action": "A", "outcome": "R", "utility": [1, -1]})");
  EXPECT_EQ(run_command(cli() + " decide --model " + path.string() + " --exact").status, 1);
  auto r = run_command(cli() + " decide --model " + path.string() + " --exact --shift-utility --format json");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["chosen_action_index"], 0);
}

TEST(Cost, SymmetricRatioAboveOne) {
  auto r = run_command(cli() + " cost --params 4,2,4,4,0.3,0.01,0.05 --format json");
  ASSERT_EQ(r.status, 0) << r.out;
  json j = json::parse(r.out);
  EXPECT_GT(j["ratio"].get<double>(), 1.0);
}

TEST(Cost, BoundColumn) {
  auto r = run_command(cli() + " cost --params 3,2,4,16,0.2,0.05,0.05");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("bound"), std::string::npos);
  auto j = json::parse(run_command(cli() + " cost --params 3,2,4,16,0.2,0.05,0.05 --format json").out);
  EXPECT_EQ(j["bound"].get<double>(), 2.0);
}

TEST(Cost, Errors) {
  EXPECT_EQ(run_command(cli() + " cost --params 3,2,4,16,0.2,0.05").status, 2);
  EXPECT_EQ(run_command(cli() + " cost").status, 2);
  EXPECT_EQ(run_command(cli() + " cost --params 3,2,4,16,0,0.05,0.05").status, 1);
  EXPECT_EQ(run_command(cli() + " cost --model " + fixture()).status, 0);
}

TEST(Usage, UnknownCommandAndHelp) {
  EXPECT_EQ(run_command(cli() + " frobnicate").status, 2);
  EXPECT_EQ(run_command(cli()).status, 2);
  EXPECT_EQ(run_command(cli() + " --help").status, 0);
}

TEST(Env, QubitCapOverride) {
  EXPECT_EQ(run_command("QBD_QUBIT_CAP=2 " + cli() + " validate --model " + fixture()).status, 1);
  EXPECT_EQ(run_command("QBD_QUBIT_CAP=3 " + cli() + " decide --model " + fixture() + " --exact").status, 1);
  EXPECT_EQ(run_command("QBD_QUBIT_CAP=x " + cli() + " validate --model " + fixture()).status, 2);
}

}  // namespace
}  // namespace qbd
