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
#include "speedsched/model.hpp"

using namespace speedsched;
using testing::rat;
using testing::uniform;

namespace {

Instance single_job_instance(Rational volume = 1, Rational deadline = 2, int alpha = 3) {
  Job job;
  job.release = 0;
  job.deadline = deadline;
  job.weight = 5;
  job.volume = {volume};
  return Instance::create(1, Rational(alpha), {job});
}

}  // namespace

TEST_CASE("instance creation enforces the field invariants") {
  CHECK_THROWS_AS(Instance::create(0, 3, {}), ParseError);
  Job bad;
  bad.release = 2;
  bad.deadline = 2;  // empty window is rejected at parse time
  bad.volume = {Rational(1)};
  CHECK_THROWS_AS(Instance::create(1, 3, {bad}), ParseError);
  bad.deadline = 3;
  bad.weight = 0;
  CHECK_THROWS_AS(Instance::create(1, 3, {bad}), ParseError);
  bad.weight = 1;
  bad.volume = {std::nullopt};
  CHECK_THROWS_AS(Instance::create(1, 3, {bad}), ParseError);
}

TEST_CASE("jobs are renamed into deadline order with input-order ties") {
  const Instance inst = testing::walkthrough_instance();
  REQUIRE(inst.n() == 4);
  CHECK(inst.job(0).id == 1);  // d=2
  CHECK(inst.job(1).id == 2);  // d=3, input first
  CHECK(inst.job(2).id == 4);  // d=3, input later
  CHECK(inst.job(3).id == 3);  // d=5
  CHECK(inst.position_of_id(4) == 2);
  CHECK(inst.total_weight() == 4);
  CHECK_FALSE(inst.identical_machines());
  CHECK_FALSE(inst.agreeable());  // [0,2] vs [1,3] cross
}

TEST_CASE("power model identities") {
  const PowerModel power(3);
  CHECK(power.P(rat("1/2")) == rat("1/8"));
  CHECK(power.Pprime(rat("1/2")) == rat("3/4"));
  CHECK(power.Pprime(rat("7/4")) == rat("147/16"));
  CHECK(power.Q(rat("4/5")) == rat("-128/125"));
  CHECK(power.steepness() == Rational(3));
  CHECK(power.energy(1, 2) == rat("1/4"));
  const PowerModel linear(1);
  CHECK(linear.Pprime(0) == Rational(1));  // z^0 = 1 convention
  CHECK(linear.Q(rat("5")) == Rational(0));
  CHECK_THROWS_AS(PowerModel(0), std::invalid_argument);
}

TEST_CASE("energy_of on simple plans") {
  const PowerModel power(3);
  SECTION("one slice, speed 1, length 2") {
    const Instance inst = single_job_instance(2);
    SchedulePlan plan = SchedulePlan::empty(1);
    plan.machines[0].push_back({0, 0, 2, 1});
    CHECK(energy_of(inst, plan, power) == Rational(2));
  }
  SECTION("volume 1 over window length 2 at speed 1/2") {
    const Instance inst = single_job_instance(1);
    SchedulePlan plan = SchedulePlan::empty(1);
    plan.machines[0].push_back({0, 0, 2, rat("1/2")});
    CHECK(energy_of(inst, plan, power) == rat("1/4"));
  }
  SECTION("empty plan") {
    const Instance inst = single_job_instance();
    CHECK(energy_of(inst, SchedulePlan::empty(1), power) == Rational(0));
  }
}

TEST_CASE("validate_plan reports each violation kind") {
  const Instance inst = testing::walkthrough_instance();
  SECTION("feasible single-job plan") {
    SchedulePlan plan = SchedulePlan::empty(2);
    plan.machines[0].push_back({inst.position_of_id(1), 0, 2, rat("1/2")});
    CHECK(validate_plan(inst, plan).ok());
  }
  SECTION("overlapping slices") {
    SchedulePlan plan = SchedulePlan::empty(2);
    const int pos = inst.position_of_id(3);
    plan.machines[0].push_back({pos, 0, 3, 1});
    plan.machines[0].push_back({pos, 2, 3, 1});
    const auto report = validate_plan(inst, plan);
    REQUIRE_FALSE(report.ok());
    bool overlap = false;
    for (const auto& v : report.violations)
      if (v.kind == PlanViolation::Kind::Overlap) overlap = true;
    CHECK(overlap);
  }
  SECTION("migration") {
    SchedulePlan plan = SchedulePlan::empty(2);
    const int pos = inst.position_of_id(3);
    plan.machines[0].push_back({pos, 0, 2, 1});
    plan.machines[1].push_back({pos, 2, 4, 1});
    const auto report = validate_plan(inst, plan);
    bool migration = false;
    for (const auto& v : report.violations)
      if (v.kind == PlanViolation::Kind::Migration) migration = true;
    CHECK(migration);
  }
  SECTION("window violation") {
    SchedulePlan plan = SchedulePlan::empty(2);
    plan.machines[0].push_back({inst.position_of_id(1), 0, 3, 1});
    const auto report = validate_plan(inst, plan);
    bool window = false;
    for (const auto& v : report.violations)
      if (v.kind == PlanViolation::Kind::Window) window = true;
    CHECK(window);
  }
  SECTION("volume shortfall") {
    SchedulePlan plan = SchedulePlan::empty(2);
    plan.machines[0].push_back({inst.position_of_id(1), 0, 1, rat("1/2")});
    const auto report = validate_plan(inst, plan);
    bool mismatch = false;
    for (const auto& v : report.violations)
      if (v.kind == PlanViolation::Kind::VolumeMismatch) mismatch = true;
    CHECK(mismatch);
  }
}

TEST_CASE("throughput_of counts completed weight") {
  const Instance inst = testing::walkthrough_instance();
  SECTION("three of the four unit jobs") {
    SchedulePlan plan = SchedulePlan::empty(2);
    plan.machines[0].push_back({inst.position_of_id(1), 0, 2, rat("1/2")});
    plan.machines[1].push_back({inst.position_of_id(3), 0, 1, rat("4/5")});
    plan.machines[1].push_back({inst.position_of_id(4), 1, rat("9/4"), rat("4/5")});
    plan.machines[1].push_back({inst.position_of_id(3), rat("9/4"), 5, rat("4/5")});
    CHECK(throughput_of(inst, plan) == 3);
  }
  SECTION("empty plan") { CHECK(throughput_of(inst, SchedulePlan::empty(2)) == 0); }
  SECTION("single weight-5 job") {
    const Instance single = single_job_instance();
    SchedulePlan plan = SchedulePlan::empty(1);
    plan.machines[0].push_back({0, 0, 2, rat("1/2")});
    CHECK(throughput_of(single, plan) == 5);
  }
  SECTION("invalid plans are rejected") {
    SchedulePlan plan = SchedulePlan::empty(2);
    plan.machines[0].push_back({inst.position_of_id(1), 0, 1, rat("1/3")});
    CHECK_THROWS_AS(throughput_of(inst, plan), Error);
  }
}

TEST_CASE("energy is additive and subdivision-invariant") {
  const PowerModel power(3);
  const Instance inst = testing::walkthrough_instance();
  SchedulePlan plan = SchedulePlan::empty(2);
  plan.machines[0].push_back({inst.position_of_id(1), 0, 2, rat("1/2")});
  plan.machines[1].push_back({inst.position_of_id(4), 1, 3, rat("1/2")});
  const Rational total = energy_of(inst, plan, power);

  SchedulePlan split = SchedulePlan::empty(2);
  split.machines[0].push_back({inst.position_of_id(1), 0, 1, rat("1/2")});
  split.machines[0].push_back({inst.position_of_id(1), 1, 2, rat("1/2")});
  split.machines[1] = plan.machines[1];
  CHECK(energy_of(inst, split, power) == total);

  Rational by_machine = 0;
  for (int i = 0; i < 2; ++i) {
    SchedulePlan only = SchedulePlan::empty(2);
    only.machines[static_cast<std::size_t>(i)] = plan.machines[static_cast<std::size_t>(i)];
    by_machine += energy_of(inst, only, power);
  }
  CHECK(by_machine == total);
}

TEST_CASE("constant-speed consolidation never increases energy") {
  const PowerModel power(3);
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    // One job, two random-speed slices over disjoint intervals vs. the
    // constant-speed slice of the same volume over the same total duration.
    const Rational s1(uniform(rng, 1, 6), uniform(rng, 1, 3));
    const Rational s2(uniform(rng, 1, 6), uniform(rng, 1, 3));
    const Rational len1(uniform(rng, 1, 4));
    const Rational len2(uniform(rng, 1, 4));
    const Rational volume = s1 * len1 + s2 * len2;
    const Rational uneven = power.P(s1) * len1 + power.P(s2) * len2;
    const Rational even = power.P(volume / (len1 + len2)) * (len1 + len2);
    CHECK(even <= uneven);
  }
}
