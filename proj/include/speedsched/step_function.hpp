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

#pragma once

#include <vector>

#include "speedsched/rational.hpp"

namespace speedsched {

/// Piecewise-constant nonnegative function over half-open pieces
/// [bounds[i], bounds[i+1]), implicitly 0 outside [bounds.front(),
/// bounds.back()). Canonical form: strictly increasing bounds, adjacent
/// equal values merged, zero-valued edge pieces trimmed. Canonical form
/// makes operator== pointwise equality.
struct FillResult;

class StepFunction {
 public:
  struct Piece {
    Rational lo, hi, value;
  };

  StepFunction() = default;

  /// value `v` on [lo, hi), zero elsewhere.
  static StepFunction constant(const Rational& lo, const Rational& hi, const Rational& v);

  /// Builds from raw breakpoints/values and canonicalizes. values.size()
  /// must be bounds.size() - 1 (both may be empty).
  static StepFunction from_pieces(std::vector<Rational> bounds, std::vector<Rational> values);

  bool is_zero() const { return values_.empty(); }
  std::size_t piece_count() const { return values_.size(); }
  const std::vector<Rational>& bounds() const { return bounds_; }
  const std::vector<Rational>& values() const { return values_; }

  Rational value_at(const Rational& t) const;

  /// Pieces of this function restricted to [a, b), including explicit
  /// zero-valued gaps, so the result tiles the window exactly.
  std::vector<Piece> pieces_in(const Rational& a, const Rational& b) const;

  StepFunction add(const StepFunction& other) const;

  /// Pointwise difference; requires *this >= other everywhere.
  StepFunction subtract(const StepFunction& other) const;

  /// Minimum value over [a, b], counting outside-domain as 0. Requires a < b.
  Rational window_min(const Rational& a, const Rational& b) const;

  Rational integral(const Rational& a, const Rational& b) const;
  Rational integral() const;

  /// Water-filling: the unique level L with ∫_a^b max(L - v(t), 0) dt =
  /// volume, together with delta(t) = max(L - v(t), 0) on [a, b). Zero
  /// volume returns (window minimum, zero function). Requires a < b,
  /// volume >= 0.
  FillResult fill(const Rational& a, const Rational& b, const Rational& volume) const;

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return a.bounds_ == b.bounds_ && a.values_ == b.values_;
  }

 private:
  std::vector<Rational> bounds_;
  std::vector<Rational> values_;

  void canonicalize();
};

struct FillResult {
  Rational level;
  StepFunction delta;
};

}  // namespace speedsched
