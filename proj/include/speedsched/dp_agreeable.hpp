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
#include <utility>
#include <vector>

#include "speedsched/dp_result.hpp"
#include "speedsched/extended.hpp"
#include "speedsched/model.hpp"

namespace speedsched::dp_agreeable {

/// Time grid: subdivisions a + l*(b-a)/k of release/deadline pairs for
/// k = 1..V where V is the total volume. Requires an agreeable instance on
/// identical machines with integer volumes.
std::vector<Rational> build_phi(const Instance& instance);

/// Speed set: i/(b-a) for i = 1..V over release/deadline pairs a < b.
std::vector<Rational> build_delta(const Instance& instance);

/// Predecessor vectors of Proposition-8's placement step: all (a, h) with
/// a_h = min(b_h, d_k) - p_k/s on the grid, a_h >= r_k, and a_i = b_i
/// elsewhere. `k` is 1-based in EDF order.
std::vector<std::pair<std::vector<Rational>, int>> prec(const Instance& instance, int k,
                                                        const std::vector<Rational>& b,
                                                        const Rational& speed);

/// Exact solver for agreeable jobs with arbitrary volumes on up to 3
/// identical machines: memoized frontier recursion F_k(b, w), placing job k
/// last on some machine ending at min(b_h, d_k).
template <class Power>
class AgreeableDp {
 public:
  using K = typename Power::num_type;

  AgreeableDp(const Instance& instance, const Power& power);
  ~AgreeableDp();
  AgreeableDp(AgreeableDp&&) noexcept;
  AgreeableDp& operator=(AgreeableDp&&) noexcept;

  const std::vector<Rational>& phi() const;

  /// Minimum energy of scheduling weight >= w from the first k jobs, each
  /// machine i busy only inside [r_min, b_i]. Times must lie on the grid.
  Ext<K> fk(int k, const std::vector<Rational>& b, long w);

  /// max{w : F_n((d_max..), w) <= budget} with the reconstructed plan
  /// (per-machine EDF order, all times on the grid).
  DpOutcome<K> solve(const K& budget);

  std::uint64_t expanded_states() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

template <class Power>
DpOutcome<typename Power::num_type> solve_agreeable(const Instance& instance,
                                                    const typename Power::num_type& budget,
                                                    const Power& power);

}  // namespace speedsched::dp_agreeable
