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

#include <cstdint>
#include <vector>

#include "speedsched/extended.hpp"
#include "speedsched/model.hpp"

namespace speedsched::oracle {

/// Enumeration caps. The oracles refuse instances beyond these instead of
/// running unbounded; they exist to certify the solvers at desk scale, not
/// to perform.
struct OracleBudget {
  int max_jobs = 8;
  int max_machines = 3;
  std::size_t max_grid = 1024;
  double max_seconds = 120.0;
};

struct YdsJob {
  int key = 0;
  Rational release, deadline, volume;
};

template <class K>
struct YdsResult {
  K energy{};
  /// Single-machine preemptive plan; Slice::job carries YdsJob::key.
  std::vector<Slice> slices;
};

/// Classical minimum-energy preemptive single-machine schedule: repeatedly
/// extract the maximum-density interval (density = contained volume over
/// unblocked length) and run its jobs EDF at that density.
template <class Power>
YdsResult<typename Power::num_type> yds_min_energy(const std::vector<YdsJob>& jobs,
                                                   const Power& power);

/// Exhaustive optimum for preemptive non-migratory scheduling: enumerates
/// job subsets and machine assignments, pricing each machine with the YDS
/// schedule of its assigned set. Built once per instance; answers all
/// demands from the table.
template <class Power>
class PreemptiveOracle {
 public:
  using K = typename Power::num_type;

  PreemptiveOracle(const Instance& instance, const Power& power, OracleBudget budget = {});

  /// Minimum energy over subsets of weight >= demand; +inf if none.
  Ext<K> min_energy(const Rational& demand) const;
  /// Maximum subset weight whose optimal energy fits the budget.
  long max_weight(const K& energy_budget) const;
  /// Optimal energy for one specific subset (bitmask over job positions).
  const Ext<K>& subset_energy(std::uint64_t mask) const { return best_[mask]; }

 private:
  const Instance& instance_;
  std::vector<long> mask_weight_;
  std::vector<Ext<K>> best_;
};

/// min over subsets S with w(S) >= demand, over machine assignments, of the
/// summed per-machine YDS energies.
template <class Power>
Ext<typename Power::num_type> opt_preemptive(const Instance& instance, const Rational& demand,
                                             const Power& power, OracleBudget budget = {});

/// Exhaustive optimum for non-preemptive scheduling on identical machines
/// with all start/completion times restricted to a grid: enumerates subsets,
/// machine partitions, and per-machine job orders (EDF only when the
/// instance is agreeable), pricing each order with a start-as-early-as-
/// possible table over the grid.
template <class Power>
class NonpreemptiveOracle {
 public:
  using K = typename Power::num_type;

  NonpreemptiveOracle(const Instance& instance, std::vector<Rational> grid, const Power& power,
                      OracleBudget budget = {});

  /// Max total weight schedulable within the energy budget.
  long max_weight(const K& energy_budget) const;
  const Ext<K>& subset_energy(std::uint64_t mask) const { return best_[mask]; }
  /// All distinct finite subset energies, ascending (handy budget probes).
  std::vector<K> distinct_energies() const;

 private:
  const Instance& instance_;
  std::vector<long> mask_weight_;
  std::vector<Ext<K>> best_;
};

template <class Power>
long opt_nonpreemptive(const Instance& instance, const typename Power::num_type& energy_budget,
                       std::vector<Rational> grid, const Power& power, OracleBudget budget = {});

}  // namespace speedsched::oracle
