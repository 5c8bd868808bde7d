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

#include <memory>
#include <vector>

#include "speedsched/dp_result.hpp"
#include "speedsched/extended.hpp"
#include "speedsched/model.hpp"

namespace speedsched::dp_equal {

/// Time grid: for every pair a <= b of release/deadline values, the k-fold
/// equal subdivisions a + l*(b-a)/k for k = 1..n. Sorted, deduplicated.
/// Requires an equal-volume instance.
std::vector<Rational> build_theta(const Instance& instance);

/// Speed set: l*p/(b-a) for l = 1..n over release/deadline pairs a < b.
std::vector<Rational> build_lambda(const Instance& instance);

/// Exact solver for equal-volume jobs on up to 3 identical machines, by
/// memoized evaluation of the boxed prefix recursion over the grid. States
/// carry a per-machine time box, a weight target, and an idle promise
/// (machine `h` runs nothing before time e); job k is placed on some
/// machine at a grid start/completion whose duration matches the speed set,
/// splitting the box at a time vector.
template <class Power>
class EqualVolumeDp {
 public:
  using K = typename Power::num_type;

  EqualVolumeDp(const Instance& instance, const Power& power);
  ~EqualVolumeDp();
  EqualVolumeDp(EqualVolumeDp&&) noexcept;
  EqualVolumeDp& operator=(EqualVolumeDp&&) noexcept;

  const std::vector<Rational>& theta() const;

  /// Minimum energy of scheduling weight >= w from the first k jobs inside
  /// the per-machine boxes [a_i, b_i], with machine `promise_machine`
  /// (if >= 0) idle on [a_h, e]. All times must lie on the grid.
  Ext<K> ek(int k, const std::vector<Rational>& a, const std::vector<Rational>& b, long w,
            const Rational& e, int promise_machine = -1);

  /// max{w : E_n((r_min..), (d_max..), w, r_min) <= budget} plus the
  /// reconstructed plan; the plan revalidates and its energy matches the
  /// table value exactly.
  DpOutcome<K> solve(const K& budget);

  std::uint64_t expanded_states() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Convenience wrapper: build the table for one budget query.
template <class Power>
DpOutcome<typename Power::num_type> solve_equal(const Instance& instance,
                                                const typename Power::num_type& budget,
                                                const Power& power);

}  // namespace speedsched::dp_equal
