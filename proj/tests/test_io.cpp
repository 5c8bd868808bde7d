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
#include <random>

#include "helpers.hpp"
#include "speedsched/io.hpp"
#include "speedsched/primal_dual.hpp"

using namespace speedsched;
using testing::rat;

TEST_CASE("instance files parse and round-trip") {
  const std::string text = R"({
    "alpha": 3,
    "machines": 2,
    "jobs": [
      {"r": 0, "d": 2, "w": 1, "p": [1, 2]},
      {"r": 1, "d": 3, "w": 1, "p": [3, 5]},
      {"r": 0, "d": 5, "w": 1, "p": [4, 3]},
      {"r": 1, "d": 3, "w": 1, "p": [2, 1]}
    ],
    "demand": 3
  })";
  const Instance inst = io::parse_instance(text);
  CHECK(inst.machines == 2);
  CHECK(inst.n() == 4);
  CHECK(inst.demand == 3);
  CHECK(inst.job(inst.position_of_id(3)).volume_on(1) == Rational(3));

  const std::string once = io::write_instance(inst);
  const std::string twice = io::write_instance(io::parse_instance(once));
  CHECK(once == twice);
  CHECK(io::instance_digest(inst) == io::instance_digest(io::parse_instance(once)));
}

TEST_CASE("rationals read as integers or num/den strings") {
  const std::string text = R"({
    "alpha": 2, "machines": 1,
    "jobs": [{"r": "1/2", "d": "7/4", "w": 2, "p": "3/2"}],
    "budget": "281/100"
  })";
  const Instance inst = io::parse_instance(text);
  CHECK(inst.job(0).release == rat("1/2"));
  CHECK(inst.job(0).deadline == rat("7/4"));
  CHECK(*inst.job(0).volume_on(0) == rat("3/2"));
  CHECK(*inst.budget == rat("281/100"));
  const Instance again = io::parse_instance(io::write_instance(inst));
  CHECK(*again.budget == rat("281/100"));
}

TEST_CASE("parse errors carry positions of a sort") {
  CHECK_THROWS_AS(io::parse_instance("not json"), ParseError);
  CHECK_THROWS_AS(io::parse_instance("{}"), ParseError);
  CHECK_THROWS_AS(io::parse_instance(R"({"alpha":3,"machines":1,"jobs":[{"r":2,"d":2,"p":1}]})"),
                  ParseError);
  CHECK_THROWS_AS(
      io::parse_instance(R"({"alpha":3,"machines":2,"jobs":[{"r":0,"d":1,"p":[1]}]})"),
      ParseError);
  CHECK_THROWS_AS(
      io::parse_instance(R"({"alpha":3,"machines":1,"jobs":[{"r":0,"d":1,"p":"x/y"}]})"),
      ParseError);
}

TEST_CASE("unassignable machines read as nulls") {
  const std::string text = R"({
    "alpha": 3, "machines": 2,
    "jobs": [{"r": 0, "d": 1, "p": [1, null]}]
  })";
  const Instance inst = io::parse_instance(text);
  CHECK(inst.job(0).volume_on(0).has_value());
  CHECK_FALSE(inst.job(0).volume_on(1).has_value());
  const Instance again = io::parse_instance(io::write_instance(inst));
  CHECK_FALSE(again.job(0).volume_on(1).has_value());
}

TEST_CASE("knapsack generator follows the reduction") {
  const Instance inst = io::generate_knapsack({{1, 1}, {2, 2}}, 2, 3);
  REQUIRE(inst.n() == 2);
  CHECK(inst.job(0).release == Rational(0));
  CHECK(inst.job(0).deadline == Rational(1));
  CHECK(inst.job(0).weight == 1);
  CHECK(*inst.job(0).volume_on(0) == Rational(1));
  CHECK(inst.job(1).release == Rational(1));
  CHECK(inst.job(1).deadline == Rational(3));
  CHECK(inst.job(1).weight == 2);
  CHECK(*inst.job(1).volume_on(0) == Rational(1));
  CHECK(*inst.budget == Rational(2));
  CHECK(inst.agreeable());
  CHECK(inst.equal_volume());
}

TEST_CASE("generators are deterministic and in-family") {
  io::GenParams params;
  params.jobs = 5;
  params.machines = 2;
  const Instance a = io::generate_agreeable(77, params);
  const Instance b = io::generate_agreeable(77, params);
  CHECK(io::write_instance(a) == io::write_instance(b));
  CHECK(a.agreeable());
  CHECK(a.identical_machines());
  const Instance c = io::generate_agreeable(78, params);
  CHECK(io::write_instance(a) != io::write_instance(c));

  params.equal_volume = Rational(2);
  const Instance d = io::generate_equal_volume(5, params);
  CHECK(d.equal_volume());
  CHECK(*d.job(0).volume_on(0) == Rational(2));
}

TEST_CASE("result files round-trip and verify") {
  const Instance inst = testing::walkthrough_instance();
  const PowerModel power = inst.power();
  const auto sol = pd::solve(inst, Rational(3), power);

  io::ResultFile result;
  result.solver = "pd-energy";
  result.instance = inst;
  result.digest = io::instance_digest(inst);
  result.demand = Rational(3);
  result.throughput = sol.selected_weight(inst);
  result.energy = sol.energy.str();
  result.plan = sol.plan;
  result.has_dual = true;
  result.dual = sol.dual;
  result.iterations = sol.rounds;

  const std::string text = io::write_result(result);
  const io::ResultFile parsed = io::parse_result(text);
  CHECK(parsed.solver == "pd-energy");
  CHECK(parsed.energy == "281/100");
  CHECK(parsed.throughput == 3);
  CHECK(io::verify_result(parsed).empty());

  SECTION("tampered energy fails verification") {
    io::ResultFile bad = parsed;
    bad.energy = "28/10";
    CHECK_FALSE(io::verify_result(bad).empty());
  }
  SECTION("tampered plan fails verification") {
    io::ResultFile bad = parsed;
    bad.plan.machines[0][0].speed = Rational(1);
    CHECK_FALSE(io::verify_result(bad).empty());
  }
  SECTION("tampered beta fails the dual replay") {
    io::ResultFile bad = parsed;
    bad.dual.chain[2].beta = bad.dual.chain[2].beta + Rational(50);
    CHECK_FALSE(io::verify_result(bad).empty());
  }
}

TEST_CASE("csv rows carry exact strings") {
  const Instance inst = testing::walkthrough_instance();
  const std::string row =
      io::csv_row("walkthrough.json", "pd-energy", inst, "3", 3, "281/100", 3, 0.25);
  CHECK(row == "walkthrough.json,pd-energy,4,2,3,3,3,281/100,3,0.25");
  CHECK(io::csv_header() ==
        "instance,solver,n,m,alpha,demand_or_budget,throughput,energy,iterations,ms");
}
