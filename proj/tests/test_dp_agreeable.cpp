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
#include "speedsched/dp_agreeable.hpp"
#include "speedsched/io.hpp"
#include "speedsched/oracle.hpp"

using namespace speedsched;
using testing::rat;

namespace {

const PowerModel kCube(3);

Instance agreeable_jobs(std::vector<std::tuple<long, long, long, long>> rows, int machines = 1) {
  std::vector<Job> jobs;
  for (const auto& [r, d, p, w] : rows) {
    Job job;
    job.release = Rational(r);
    job.deadline = Rational(d);
    job.weight = w;
    job.volume.assign(static_cast<std::size_t>(machines), Rational(p));
    jobs.push_back(std::move(job));
  }
  return Instance::create(machines, 3, std::move(jobs));
}

}  // namespace

TEST_CASE("agreeability is verified pairwise") {
  CHECK(agreeable_jobs({{0, 1, 1, 1}, {1, 3, 1, 1}}).agreeable());
  SECTION("crossing windows are rejected") {
    const Instance crossing = testing::walkthrough_instance();
    CHECK_THROWS_AS(dp_agreeable::build_phi(crossing), WrongSolverError);
  }
  SECTION("equal releases with distinct deadlines are rejected") {
    std::vector<Job> jobs(2);
    jobs[0].release = 0; jobs[0].deadline = 2; jobs[0].volume = {Rational(1)};
    jobs[1].release = 0; jobs[1].deadline = 3; jobs[1].volume = {Rational(1)};
    const Instance inst = Instance::create(1, 3, std::move(jobs));
    CHECK_FALSE(inst.agreeable());
    CHECK_THROWS_AS(dp_agreeable::solve_agreeable(inst, Rational(1), kCube), WrongSolverError);
  }
  SECTION("full ties are allowed") {
    CHECK(agreeable_jobs({{0, 2, 1, 1}, {0, 2, 2, 1}}).agreeable());
  }
}

TEST_CASE("phi and delta enumerate the volume-indexed grid") {
  const Instance inst = agreeable_jobs({{0, 1, 1, 1}, {1, 3, 1, 2}});
  // V = 2, Omega = {0,1,3}.
  const auto phi = dp_agreeable::build_phi(inst);
  CHECK(std::binary_search(phi.begin(), phi.end(), rat("1/2")));
  CHECK(std::binary_search(phi.begin(), phi.end(), Rational(2)));
  CHECK(std::binary_search(phi.begin(), phi.end(), rat("3/2")));
  for (const Rational& t : {Rational(0), Rational(1), Rational(3)})
    CHECK(std::binary_search(phi.begin(), phi.end(), t));
  const auto delta = dp_agreeable::build_delta(inst);
  // i/(b-a) for i in {1,2} over spans {1,2,3}.
  CHECK(delta == std::vector<Rational>{rat("1/3"), rat("1/2"), rat("2/3"), 1, 2});
}

TEST_CASE("prec computes predecessor vectors") {
  SECTION("single machine hit") {
    const Instance inst = agreeable_jobs({{0, 1, 1, 1}, {1, 3, 1, 1}});
    const auto out = dp_agreeable::prec(inst, 2, {Rational(3)}, rat("1/2"));
    REQUIRE(out.size() == 1);
    CHECK(out[0].first == std::vector<Rational>{Rational(1)});
    CHECK(out[0].second == 0);
  }
  SECTION("speed too small leaves no predecessor") {
    const Instance inst = agreeable_jobs({{0, 1, 1, 1}, {1, 3, 1, 1}});
    CHECK(dp_agreeable::prec(inst, 2, {Rational(3)}, rat("1/4")).empty());
  }
  SECTION("two machines give one candidate each") {
    const Instance inst = agreeable_jobs({{0, 2, 2, 1}, {1, 3, 2, 1}}, 2);
    const auto out = dp_agreeable::prec(inst, 2, {Rational(3), Rational(5)}, Rational(1));
    REQUIRE(out.size() == 2);
    CHECK(out[0].first == std::vector<Rational>{Rational(1), Rational(5)});
    CHECK(out[0].second == 0);
    CHECK(out[1].first == std::vector<Rational>{Rational(3), Rational(1)});
    CHECK(out[1].second == 1);
  }
}

TEST_CASE("base cases and the one-job recursion") {
  const Instance inst = agreeable_jobs({{0, 2, 1, 1}});
  dp_agreeable::AgreeableDp<PowerModel> dp(inst, kCube);
  CHECK(dp.fk(0, {Rational(2)}, 0) == Ext<Rational>(Rational(0)));
  CHECK_FALSE(dp.fk(0, {Rational(2)}, 1).is_finite());
  CHECK(dp.fk(1, {Rational(2)}, 1) == Ext<Rational>(rat("1/4")));
}

TEST_CASE("one-job budget thresholds") {
  const Instance inst = agreeable_jobs({{0, 2, 1, 1}});
  SECTION("exactly affordable") {
    const auto out = dp_agreeable::solve_agreeable(inst, rat("1/4"), kCube);
    CHECK(out.weight == 1);
    REQUIRE(out.plan.machines[0].size() == 1);
    CHECK(out.plan.machines[0][0].t0 == Rational(0));
    CHECK(out.plan.machines[0][0].t1 == Rational(2));
    CHECK(out.plan.machines[0][0].speed == rat("1/2"));
  }
  SECTION("below the minimum") {
    CHECK(dp_agreeable::solve_agreeable(inst, rat("1/5"), kCube).weight == 0);
  }
  SECTION("negative budget is an error") {
    CHECK_THROWS_AS(dp_agreeable::solve_agreeable(inst, Rational(-1), kCube), ParseError);
  }
}

TEST_CASE("knapsack-generated instance thresholds") {
  const Instance inst = io::generate_knapsack({{1, 1}, {2, 2}}, 2, 3);
  // Jobs (0,1,p=1,w=1) and (1,3,p=1,w=2); energies 1 and 1/4.
  CHECK(dp_agreeable::solve_agreeable(inst, rat("5/4"), kCube).weight == 3);
  CHECK(dp_agreeable::solve_agreeable(inst, rat("9/8"), kCube).weight == 2);
  CHECK(dp_agreeable::solve_agreeable(inst, rat("1/4"), kCube).weight == 2);
  CHECK(dp_agreeable::solve_agreeable(inst, rat("1/5"), kCube).weight == 0);
  // The generator's stated budget (the knapsack capacity) admits both jobs.
  CHECK(dp_agreeable::solve_agreeable(inst, *inst.budget, kCube).weight == 3);
}

TEST_CASE("monotonicity of the frontier recursion") {
  const Instance inst = agreeable_jobs({{0, 2, 1, 2}, {1, 3, 2, 1}, {2, 5, 1, 2}});
  dp_agreeable::AgreeableDp<PowerModel> dp(inst, kCube);
  const std::vector<Rational> top = {Rational(5)};
  for (long w = 0; w <= 5; ++w) {
    Ext<Rational> prev = Ext<Rational>::inf();
    for (int k = 0; k <= 3; ++k) {
      const auto v = dp.fk(k, top, w);
      CHECK_FALSE(prev < v);
      prev = v;
    }
  }
  for (int k = 0; k <= 3; ++k) {
    Ext<Rational> prev(Rational(0));
    for (long w = 0; w <= 5; ++w) {
      const auto v = dp.fk(k, top, w);
      CHECK_FALSE(v < prev);
      prev = v;
    }
  }
  SECTION("non-increasing as the frontier grows") {
    for (long w = 1; w <= 4; ++w) {
      const auto tight = dp.fk(3, {Rational(3)}, w);
      const auto loose = dp.fk(3, {Rational(5)}, w);
      CHECK_FALSE(tight < loose);
    }
  }
}

TEST_CASE("plans are per-machine EDF with grid times") {
  std::mt19937_64 rng(3003);
  for (int round = 0; round < 20; ++round) {
    io::GenParams params;
    params.jobs = static_cast<int>(testing::uniform(rng, 1, 4));
    params.machines = static_cast<int>(testing::uniform(rng, 1, 2));
    params.max_volume = 2;
    params.max_weight = 3;
    const Instance inst = io::generate_agreeable(rng(), params);
    dp_agreeable::AgreeableDp<PowerModel> dp(inst, kCube);
    const auto out = dp.solve(Rational(testing::uniform(rng, 0, 8)));
    CHECK(validate_plan(inst, out.plan).ok());
    const auto& phi = dp.phi();
    for (const auto& machine : out.plan.machines) {
      for (std::size_t s = 0; s + 1 < machine.size(); ++s)
        CHECK(machine[s].job < machine[s + 1].job);  // EDF order = index order
      for (const Slice& s : machine) {
        CHECK(std::binary_search(phi.begin(), phi.end(), s.t0));
        CHECK(std::binary_search(phi.begin(), phi.end(), s.t1));
      }
    }
  }
}

TEST_CASE("agreeable solver matches the exhaustive oracle on sampled instances") {
  std::mt19937_64 rng(4004);
  for (int round = 0; round < 12; ++round) {
    io::GenParams params;
    params.jobs = static_cast<int>(testing::uniform(rng, 1, 4));
    params.machines = static_cast<int>(testing::uniform(rng, 1, 2));
    params.max_volume = 2;
    params.max_weight = 2;
    const Instance inst = io::generate_agreeable(rng(), params);
    dp_agreeable::AgreeableDp<PowerModel> dp(inst, kCube);
    const oracle::NonpreemptiveOracle<PowerModel> opt(inst, dp.phi(), kCube);
    std::vector<Rational> budgets = opt.distinct_energies();
    budgets.push_back(Rational(0));
    for (const Rational& budget : budgets) {
      INFO("budget " << budget.str());
      CHECK(dp.solve(budget).weight == opt.max_weight(budget));
    }
  }
}
