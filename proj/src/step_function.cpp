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

#include "speedsched/step_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace speedsched {

namespace {

void check_window(const Rational& a, const Rational& b) {
  if (a >= b) throw std::invalid_argument("empty window: [" + a.str() + ", " + b.str() + ")");
}

}  // namespace

void StepFunction::canonicalize() {
  // Merge adjacent equal values.
  std::size_t out = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (out > 0 && values_[out - 1] == values_[i]) {
      bounds_[out] = bounds_[i + 1];
      continue;
    }
    values_[out] = values_[i];
    bounds_[out] = bounds_[i];
    bounds_[out + 1] = bounds_[i + 1];
    ++out;
  }
  values_.resize(out);
  bounds_.resize(values_.empty() ? 0 : out + 1);
  // Trim zero-valued edges.
  while (!values_.empty() && values_.back().is_zero()) {
    values_.pop_back();
    bounds_.pop_back();
  }
  if (!values_.empty() && values_.front().is_zero()) {
    const auto zeros =
        std::find_if(values_.begin(), values_.end(), [](const Rational& v) { return !v.is_zero(); }) -
        values_.begin();
    values_.erase(values_.begin(), values_.begin() + zeros);
    bounds_.erase(bounds_.begin(), bounds_.begin() + zeros);
  }
  if (values_.empty()) bounds_.clear();
}

StepFunction StepFunction::constant(const Rational& lo, const Rational& hi, const Rational& v) {
  check_window(lo, hi);
  if (v.sign() < 0) throw std::invalid_argument("negative step value");
  StepFunction f;
  if (!v.is_zero()) {
    f.bounds_ = {lo, hi};
    f.values_ = {v};
  }
  return f;
}

StepFunction StepFunction::from_pieces(std::vector<Rational> bounds, std::vector<Rational> values) {
  if (bounds.empty() ? !values.empty() : bounds.size() != values.size() + 1)
    throw std::invalid_argument("mismatched step-function arrays");
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
    if (bounds[i] >= bounds[i + 1])
      throw std::invalid_argument("step-function breakpoints not increasing");
  for (const auto& v : values)
    if (v.sign() < 0) throw std::invalid_argument("negative step value");
  StepFunction f;
  f.bounds_ = std::move(bounds);
  f.values_ = std::move(values);
  f.canonicalize();
  return f;
}

Rational StepFunction::value_at(const Rational& t) const {
  if (values_.empty() || t < bounds_.front() || t >= bounds_.back()) return 0;
  const auto it = std::upper_bound(bounds_.begin(), bounds_.end(), t);
  return values_[static_cast<std::size_t>(it - bounds_.begin()) - 1];
}

std::vector<StepFunction::Piece> StepFunction::pieces_in(const Rational& a, const Rational& b) const {
  check_window(a, b);
  std::vector<Piece> out;
  Rational cursor = a;
  if (!values_.empty()) {
    for (std::size_t i = 0; i < values_.size() && cursor < b; ++i) {
      const Rational lo = max(bounds_[i], cursor);
      const Rational hi = min(bounds_[i + 1], b);
      if (lo >= hi) continue;
      if (cursor < lo) out.push_back({cursor, lo, Rational(0)});
      out.push_back({lo, hi, values_[i]});
      cursor = hi;
    }
  }
  if (cursor < b) out.push_back({cursor, b, Rational(0)});
  return out;
}

StepFunction StepFunction::add(const StepFunction& other) const {
  if (other.is_zero()) return *this;
  if (is_zero()) return other;
  std::vector<Rational> cuts;
  cuts.reserve(bounds_.size() + other.bounds_.size());
  std::merge(bounds_.begin(), bounds_.end(), other.bounds_.begin(), other.bounds_.end(),
             std::back_inserter(cuts));
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Rational> values;
  values.reserve(cuts.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    values.push_back(value_at(cuts[i]) + other.value_at(cuts[i]));
  return from_pieces(std::move(cuts), std::move(values));
}

StepFunction StepFunction::subtract(const StepFunction& other) const {
  if (other.is_zero()) return *this;
  std::vector<Rational> cuts;
  std::merge(bounds_.begin(), bounds_.end(), other.bounds_.begin(), other.bounds_.end(),
             std::back_inserter(cuts));
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Rational> values;
  values.reserve(cuts.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rational v = value_at(cuts[i]) - other.value_at(cuts[i]);
    if (v.sign() < 0)
      throw std::invalid_argument("step-function subtraction went negative at t=" + cuts[i].str());
    values.push_back(std::move(v));
  }
  return from_pieces(std::move(cuts), std::move(values));
}

Rational StepFunction::window_min(const Rational& a, const Rational& b) const {
  check_window(a, b);
  if (values_.empty() || a < bounds_.front() || b > bounds_.back()) return 0;
  Rational best;
  bool first = true;
  for (const Piece& p : pieces_in(a, b)) {
    if (first || p.value < best) best = p.value;
    first = false;
  }
  return best;
}

Rational StepFunction::integral(const Rational& a, const Rational& b) const {
  check_window(a, b);
  Rational total = 0;
  for (const Piece& p : pieces_in(a, b)) total += p.value * (p.hi - p.lo);
  return total;
}

Rational StepFunction::integral() const {
  if (values_.empty()) return 0;
  return integral(bounds_.front(), bounds_.back());
}

FillResult StepFunction::fill(const Rational& a, const Rational& b,
                              const Rational& volume) const {
  check_window(a, b);
  if (volume.sign() < 0) throw std::invalid_argument("negative fill volume");
  if (volume.is_zero()) return {window_min(a, b), StepFunction()};

  std::vector<Piece> pieces = pieces_in(a, b);
  // Sweep candidate levels at piece values: water(L) = sum max(L - v, 0)*len
  // is piecewise linear and increasing, so the level sits between two piece
  // values and the last segment solves linearly.
  std::vector<Rational> heights;
  heights.reserve(pieces.size());
  for (const Piece& p : pieces) heights.push_back(p.value);
  std::sort(heights.begin(), heights.end());
  heights.erase(std::unique(heights.begin(), heights.end()), heights.end());

  const auto water_at = [&](const Rational& level) {
    Rational w = 0;
    for (const Piece& p : pieces)
      if (p.value < level) w += (level - p.value) * (p.hi - p.lo);
    return w;
  };

  // Largest height whose water is still below the target.
  Rational base = heights.front();
  for (const Rational& h : heights) {
    if (water_at(h) >= volume) break;
    base = h;
  }
  Rational active_len = 0;
  for (const Piece& p : pieces)
    if (p.value <= base) active_len += p.hi - p.lo;
  const Rational level = base + (volume - water_at(base)) / active_len;

  std::vector<Rational> cuts, vals;
  for (const Piece& p : pieces) {
    const Rational d = p.value < level ? level - p.value : Rational(0);
    if (cuts.empty()) {
      cuts.push_back(p.lo);
    }
    cuts.push_back(p.hi);
    vals.push_back(d);
  }
  return {level, from_pieces(std::move(cuts), std::move(vals))};
}

}  // namespace speedsched
