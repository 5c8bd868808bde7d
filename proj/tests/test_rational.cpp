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

#include "speedsched/rational.hpp"

using speedsched::Rational;

TEST_CASE("rational construction keeps lowest terms") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(2, 4).str() == "1/2");
}

TEST_CASE("rational arithmetic and comparison") {
  const Rational a(3, 4), b(1, 6);
  CHECK(a + b == Rational(11, 12));
  CHECK(a - b == Rational(7, 12));
  CHECK(a * b == Rational(1, 8));
  CHECK(a / b == Rational(9, 2));
  CHECK(a > b);
  CHECK(Rational(-1) < Rational(0));
  CHECK(min(a, b) == b);
  CHECK(max(a, b) == a);
  CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);
}

TEST_CASE("rational parse and print round-trip") {
  for (const char* text : {"0", "7", "-3", "7/4", "-501/100", "281/100"}) {
    const auto r = Rational::parse(text);
    REQUIRE(r.has_value());
    CHECK(r->str() == text);
  }
  CHECK(Rational::parse("4/8")->str() == "1/2");  // canonicalized on parse
  CHECK_FALSE(Rational::parse("").has_value());
  CHECK_FALSE(Rational::parse("1/0").has_value());
  CHECK_FALSE(Rational::parse("a/b").has_value());
  CHECK_FALSE(Rational::parse("1.5").has_value());
  CHECK_FALSE(Rational::parse("1/2/3").has_value());
}

TEST_CASE("rational powers and conversions") {
  CHECK(Rational(1, 2).pow(3) == Rational(1, 8));
  CHECK(Rational(4, 5).pow(3) == Rational(64, 125));
  CHECK(Rational(7).pow(0) == Rational(1));
  CHECK(Rational(0).pow(0) == Rational(1));
  CHECK(Rational(6, 3).to_long() == 2);
  CHECK_THROWS_AS(Rational(1, 2).to_long(), std::domain_error);
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK(Rational(1, 2).is_integer() == false);
}
