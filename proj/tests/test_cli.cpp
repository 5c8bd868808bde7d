// Copyright 2026 the speedsched authors
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

#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "speedsched/io.hpp"

using namespace speedsched;

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code;
  std::string output;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "speedsched-cli-test";
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const std::string command =
      std::string(SPEEDSCHED_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  const int raw = std::system(command.c_str());
  std::ifstream in(out);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return {WEXITSTATUS(raw), buffer.str()};
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("cli solves the walkthrough instance") {
  const fs::path inst = write_file("walkthrough.json",
                                   io::write_instance(testing::walkthrough_instance()));
  const auto res = run_cli("pd-energy --demand 3 " + inst.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"281/100\"") != std::string::npos);
  CHECK(res.output.find("pd-energy") != std::string::npos);

  SECTION("csv summary row") {
    const auto csv = run_cli("pd-energy --demand 3 --csv " + inst.string());
    CHECK(csv.exit_code == 0);
    CHECK(csv.output.find(",pd-energy,4,2,3,3,3,281/100,3,") != std::string::npos);
  }
  SECTION("demand from the instance file") {
    const auto res2 = run_cli("pd-energy " + inst.string());
    CHECK(res2.exit_code == 0);
    CHECK(res2.output.find("\"281/100\"") != std::string::npos);
  }
}

TEST_CASE("cli result files verify") {
  const fs::path inst = write_file("walkthrough2.json",
                                   io::write_instance(testing::walkthrough_instance()));
  const fs::path result = scratch_dir() / "result.json";
  const auto solve =
      run_cli("pd-energy --demand 3 --out " + result.string() + " " + inst.string());
  REQUIRE(solve.exit_code == 0);
  const auto verify = run_cli("verify " + result.string());
  CHECK(verify.exit_code == 0);
  CHECK(verify.output.find("ok") != std::string::npos);

  SECTION("tampering trips the replay") {
    std::ifstream in(result);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    const auto pos = text.find("281/100");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 7, "283/100");
    const fs::path bad = write_file("tampered.json", text);
    CHECK(run_cli("verify " + bad.string()).exit_code == 4);
  }
}

TEST_CASE("cli throughput maximization") {
  const fs::path inst = write_file("walkthrough3.json",
                                   io::write_instance(testing::walkthrough_instance()));
  const auto res = run_cli("pd-throughput --budget 281/100 --eps 1/100 " + inst.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("converged") != std::string::npos);
  SECTION("zero budget exits 1") {
    const auto broke = run_cli("pd-throughput --budget 0 " + inst.string());
    CHECK(broke.exit_code == 1);
  }
}

TEST_CASE("cli exact solvers and oracle") {
  const auto gen = run_cli("gen knapsack --items 1:1,2:2 --capacity 2 --out " +
                           (scratch_dir() / "knap.json").string());
  REQUIRE(gen.exit_code == 0);
  const Instance inst = io::load_instance((scratch_dir() / "knap.json").string());
  CHECK(inst.n() == 2);
  CHECK(*inst.budget == Rational(2));

  const auto dp = run_cli("dp-agreeable " + (scratch_dir() / "knap.json").string());
  CHECK(dp.exit_code == 0);
  CHECK(dp.output.find("\"throughput\": 3") != std::string::npos);

  const auto dpe = run_cli("dp-equal " + (scratch_dir() / "knap.json").string());
  CHECK(dpe.exit_code == 0);
  CHECK(dpe.output.find("\"throughput\": 3") != std::string::npos);

  const auto orc = run_cli("oracle --budget 2 --grid phi " + (scratch_dir() / "knap.json").string());
  CHECK(orc.exit_code == 0);
  CHECK(orc.output.find("\"max_weight\": 3") != std::string::npos);
}

TEST_CASE("cli error codes") {
  SECTION("missing file is bad input") {
    CHECK(run_cli("pd-energy --demand 1 /nonexistent.json").exit_code == 2);
  }
  SECTION("malformed json is bad input") {
    const fs::path bad = write_file("bad.json", "{");
    CHECK(run_cli("pd-energy --demand 1 " + bad.string()).exit_code == 2);
  }
  SECTION("infeasible demand exits 1") {
    const fs::path inst = write_file("walkthrough4.json",
                                     io::write_instance(testing::walkthrough_instance()));
    CHECK(run_cli("pd-energy --demand 9 " + inst.string()).exit_code == 1);
  }
  SECTION("oracle refusal exits 3") {
    io::GenParams params;
    params.jobs = 10;
    params.machines = 1;
    const fs::path big = write_file("big.json",
                                    io::write_instance(io::generate_equal_volume(3, params)));
    CHECK(run_cli("oracle --demand 1 " + big.string()).exit_code == 3);
  }
}

TEST_CASE("cli generators are reproducible") {
  const auto a = run_cli("gen agreeable --seed 11 --jobs 4 --machines 2");
  const auto b = run_cli("gen agreeable --seed 11 --jobs 4 --machines 2");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  const Instance inst = io::parse_instance(a.output);
  CHECK(inst.agreeable());
}
