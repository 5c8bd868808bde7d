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
#include "speedsched/step_function.hpp"

using speedsched::Rational;
using speedsched::StepFunction;
using speedsched::testing::rat;
using speedsched::testing::uniform;

TEST_CASE("canonical form merges and trims") {
  const auto f = StepFunction::from_pieces({0, 1, 2, 3, 4}, {0, 2, 2, 0});
  CHECK(f.piece_count() == 1);
  CHECK(f.bounds().front() == Rational(1));
  CHECK(f.bounds().back() == Rational(3));
  CHECK(f == StepFunction::constant(1, 3, 2));
  CHECK(StepFunction::from_pieces({0, 5}, {0}).is_zero());
  // Interior zeros survive.
  const auto g = StepFunction::from_pieces({0, 1, 2, 3}, {1, 0, 1});
  CHECK(g.piece_count() == 3);
}

TEST_CASE("value_at and window_min honor half-open pieces") {
  const auto f = StepFunction::constant(1, 3, rat("1/2"));
  CHECK(f.value_at(1) == rat("1/2"));
  CHECK(f.value_at(3) == Rational(0));
  CHECK(f.value_at(0) == Rational(0));
  CHECK(f.window_min(1, 3) == rat("1/2"));
  SECTION("outside-domain counts as zero") {
    CHECK(f.window_min(3, 5) == Rational(0));
    CHECK(f.window_min(0, 2) == Rational(0));
    CHECK(StepFunction().window_min(0, 9) == Rational(0));
  }
  CHECK_THROWS_AS(f.window_min(2, 2), std::invalid_argument);
}

TEST_CASE("add and subtract are pointwise inverses") {
  const auto base = StepFunction::from_pieces({0, 2, 5}, {rat("1/2"), 0});
  const auto delta = StepFunction::from_pieces({1, 2, 4}, {rat("1/4"), 1});
  const auto sum = base.add(delta);
  CHECK(sum.value_at(rat("3/2")) == rat("3/4"));
  CHECK(sum.value_at(3) == Rational(1));
  CHECK(sum.subtract(delta) == base);
  CHECK(sum.subtract(base) == delta);
  CHECK(StepFunction().add(delta) == delta);
  CHECK(delta.subtract(delta).is_zero());
  CHECK_THROWS_AS(base.subtract(delta), std::invalid_argument);
}

TEST_CASE("fill levels match the worked example") {
  SECTION("flat fill on an empty profile") {
    const auto [level, delta] = StepFunction().fill(0, 2, 1);
    CHECK(level == rat("1/2"));
    CHECK(delta == StepFunction::constant(0, 2, rat("1/2")));
  }
  SECTION("fill over a partially raised window") {
    const auto base = StepFunction::constant(1, 2, rat("1/2"));
    const auto [level, delta] = base.fill(1, 3, 3);
    CHECK(level == rat("7/4"));
    CHECK(delta.integral() == Rational(3));
    CHECK(base.add(delta).window_min(1, 3) == level);
  }
  SECTION("fill across a step") {
    const auto base = StepFunction::constant(0, 2, rat("1/2"));
    const auto [level, delta] = base.fill(0, 5, 4);
    CHECK(level == Rational(1));
    CHECK(delta == StepFunction::from_pieces({0, 2, 5}, {rat("1/2"), 1}));
  }
  SECTION("second fill on the same machine flattens the profile") {
    // Machine-2 walkthrough fills: volume 1 into [1,3], then 3 into [0,5].
    const auto first = StepFunction().fill(1, 3, 1);
    CHECK(first.level == rat("1/2"));
    const auto profile = StepFunction().add(first.delta);
    const auto second = profile.fill(0, 5, 3);
    CHECK(second.level == rat("4/5"));
    CHECK(profile.add(second.delta) == StepFunction::constant(0, 5, rat("4/5")));
  }
  SECTION("zero volume returns the window minimum with no delta") {
    const auto base = StepFunction::constant(0, 2, rat("1/2"));
    const auto [level, delta] = base.fill(0, 2, 0);
    CHECK(level == rat("1/2"));
    CHECK(delta.is_zero());
  }
  CHECK_THROWS_AS(StepFunction().fill(2, 2, 1), std::invalid_argument);
}

TEST_CASE("fill conservation and monotonicity properties") {
  std::mt19937_64 rng(20260810);
  for (int round = 0; round < 200; ++round) {
    // Random profile from a few random constant bumps.
    StepFunction profile;
    const int bumps = static_cast<int>(uniform(rng, 0, 3));
    for (int b = 0; b < bumps; ++b) {
      const long lo = uniform(rng, 0, 8);
      const long hi = uniform(rng, lo + 1, 10);
      profile = profile.add(
          StepFunction::constant(lo, hi, Rational(uniform(rng, 1, 5), uniform(rng, 1, 3))));
    }
    const long a = uniform(rng, 0, 8);
    const long b = uniform(rng, a + 1, 10);
    const Rational volume(uniform(rng, 1, 9), uniform(rng, 1, 4));

    const auto fr = profile.fill(a, b, volume);
    CHECK(fr.delta.integral() == volume);  // conservation, exact
    const auto filled = profile.add(fr.delta);
    CHECK(filled.window_min(a, b) == fr.level);
    CHECK(fr.level > profile.window_min(a, b));

    // Raising the base never lowers the level.
    const auto raised = profile.add(StepFunction::constant(a, b, Rational(uniform(rng, 1, 3))));
    CHECK(raised.fill(a, b, volume).level >= fr.level);
  }
}
