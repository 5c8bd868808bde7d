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

#include "speedsched/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>

#include "speedsched/edf.hpp"

namespace speedsched::oracle {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point end;
  explicit Deadline(double seconds)
      : end(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(seconds))) {}
  void check() const {
    if (Clock::now() > end) throw OracleRefusal("oracle wall-clock limit exceeded");
  }
};

// Disjoint sorted intervals; tracks time already claimed by earlier
// critical intervals.
class Blocked {
 public:
  Rational measure_within(const Rational& a, const Rational& b) const {
    Rational total = 0;
    for (const auto& [lo, hi] : spans_) {
      const Rational x = max(lo, a);
      const Rational y = min(hi, b);
      if (x < y) total += y - x;
    }
    return total;
  }

  Rational free_length(const Rational& a, const Rational& b) const {
    if (a >= b) return 0;
    return (b - a) - measure_within(a, b);
  }

  /// Free sub-intervals of [a, b].
  std::vector<std::pair<Rational, Rational>> free_parts(const Rational& a,
                                                        const Rational& b) const {
    std::vector<std::pair<Rational, Rational>> out;
    Rational cursor = a;
    for (const auto& [lo, hi] : spans_) {
      if (hi <= cursor) continue;
      if (lo >= b) break;
      if (cursor < lo) out.emplace_back(cursor, min(lo, b));
      cursor = max(cursor, min(hi, b));
      if (cursor >= b) break;
    }
    if (cursor < b) out.emplace_back(cursor, b);
    return out;
  }

  void block(const Rational& a, const Rational& b) {
    spans_.emplace_back(a, b);
    std::sort(spans_.begin(), spans_.end());
    std::vector<std::pair<Rational, Rational>> merged;
    for (auto& s : spans_) {
      if (!merged.empty() && s.first <= merged.back().second)
        merged.back().second = max(merged.back().second, s.second);
      else
        merged.push_back(std::move(s));
    }
    spans_ = std::move(merged);
  }

 private:
  std::vector<std::pair<Rational, Rational>> spans_;
};

}  // namespace

template <class Power>
YdsResult<typename Power::num_type> yds_min_energy(const std::vector<YdsJob>& jobs,
                                                   const Power& power) {
  using K = typename Power::num_type;
  YdsResult<K> result;
  result.energy = Power::to_num(0);

  std::vector<YdsJob> remaining = jobs;
  Blocked blocked;
  while (!remaining.empty()) {
    // Candidate critical intervals run from a release to a deadline.
    std::vector<Rational> starts, ends;
    for (const YdsJob& j : remaining) {
      starts.push_back(j.release);
      ends.push_back(j.deadline);
    }
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());

    const auto contained = [&](const YdsJob& j, const Rational& a, const Rational& b) {
      // Window's unblocked part lies inside [a, b].
      const Rational inside =
          blocked.free_length(max(j.release, a), min(j.deadline, b));
      return inside == blocked.free_length(j.release, j.deadline);
    };

    bool found = false;
    Rational best_a, best_b, best_density;
    for (const Rational& a : starts)
      for (const Rational& b : ends) {
        if (a >= b) continue;
        const Rational len = blocked.free_length(a, b);
        if (len.sign() <= 0) continue;
        Rational volume = 0;
        for (const YdsJob& j : remaining)
          if (contained(j, a, b)) volume += j.volume;
        if (volume.is_zero()) continue;
        const Rational density = volume / len;
        if (!found || density > best_density) {
          best_a = a;
          best_b = b;
          best_density = density;
          found = true;
        }
      }
    if (!found) throw InternalError("no critical interval found with jobs remaining");

    // Run the contained jobs EDF at the critical density over the free parts.
    StepFunction speed;
    for (const auto& [lo, hi] : blocked.free_parts(best_a, best_b))
      speed = speed.add(StepFunction::constant(lo, hi, best_density));

    std::vector<EdfItem> items;
    std::vector<YdsJob> rest;
    for (const YdsJob& j : remaining) {
      if (contained(j, best_a, best_b))
        items.push_back({j.key, j.release, j.deadline, j.volume});
      else
        rest.push_back(j);
    }
    for (Slice& s : edf_schedule(std::move(items), speed)) result.slices.push_back(std::move(s));
    result.energy = result.energy + power.P(Power::to_num(best_density)) *
                                        Power::to_num(blocked.free_length(best_a, best_b));
    blocked.block(best_a, best_b);
    remaining = std::move(rest);
  }
  std::sort(result.slices.begin(), result.slices.end(),
            [](const Slice& a, const Slice& b) { return a.t0 < b.t0; });
  return result;
}

namespace {

template <class Power>
std::vector<Ext<typename Power::num_type>> partition_table(
    int machines, const std::vector<std::vector<Ext<typename Power::num_type>>>& machine_cost) {
  // layer[i][mask] = min energy of splitting `mask` across machines 0..i.
  using K = typename Power::num_type;
  const std::size_t size = machine_cost.front().size();
  std::vector<Ext<K>> layer = machine_cost.front();
  for (int i = 1; i < machines; ++i) {
    std::vector<Ext<K>> next(size, Ext<K>::inf());
    for (std::uint64_t mask = 0; mask < size; ++mask) {
      std::uint64_t sub = mask;
      while (true) {
        next[mask] = min(next[mask],
                         layer[mask ^ sub] + machine_cost[static_cast<std::size_t>(i)][sub]);
        if (sub == 0) break;
        sub = (sub - 1) & mask;
      }
    }
    layer = std::move(next);
  }
  return layer;
}

}  // namespace

template <class Power>
PreemptiveOracle<Power>::PreemptiveOracle(const Instance& instance, const Power& power,
                                          OracleBudget budget)
    : instance_(instance) {
  if (instance.n() > budget.max_jobs || instance.machines > budget.max_machines)
    throw OracleRefusal("instance exceeds the preemptive oracle's enumeration caps");
  const Deadline deadline(budget.max_seconds);

  const std::size_t size = 1ULL << instance.n();
  mask_weight_.assign(size, 0);
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    const int j = std::countr_zero(mask);
    mask_weight_[mask] = mask_weight_[mask ^ (1ULL << j)] + instance.job(j).weight;
  }

  std::vector<std::vector<Ext<K>>> machine_cost(static_cast<std::size_t>(instance.machines));
  for (int i = 0; i < instance.machines; ++i) {
    auto& row = machine_cost[static_cast<std::size_t>(i)];
    row.assign(size, Ext<K>::inf());
    row[0] = Ext<K>(Power::to_num(0));
    for (std::uint64_t mask = 1; mask < size; ++mask) {
      deadline.check();
      std::vector<YdsJob> ydsjobs;
      bool runnable = true;
      for (int j = 0; j < instance.n(); ++j)
        if ((mask >> j) & 1U) {
          const Job& job = instance.job(j);
          if (!job.volume_on(i).has_value()) {
            runnable = false;
            break;
          }
          ydsjobs.push_back({j, job.release, job.deadline, *job.volume_on(i)});
        }
      if (runnable) row[mask] = Ext<K>(yds_min_energy(ydsjobs, power).energy);
    }
  }
  best_ = partition_table<Power>(instance.machines, machine_cost);
}

template <class Power>
Ext<typename Power::num_type> PreemptiveOracle<Power>::min_energy(const Rational& demand) const {
  Ext<K> best = Ext<K>::inf();
  for (std::uint64_t mask = 0; mask < best_.size(); ++mask)
    if (Rational(mask_weight_[mask]) >= demand) best = min(best, best_[mask]);
  return best;
}

template <class Power>
long PreemptiveOracle<Power>::max_weight(const K& energy_budget) const {
  long best = 0;
  for (std::uint64_t mask = 0; mask < best_.size(); ++mask)
    if (best_[mask].le(energy_budget)) best = std::max(best, mask_weight_[mask]);
  return best;
}

template <class Power>
Ext<typename Power::num_type> opt_preemptive(const Instance& instance, const Rational& demand,
                                             const Power& power, OracleBudget budget) {
  return PreemptiveOracle<Power>(instance, power, budget).min_energy(demand);
}

template <class Power>
NonpreemptiveOracle<Power>::NonpreemptiveOracle(const Instance& instance,
                                                std::vector<Rational> grid, const Power& power,
                                                OracleBudget budget)
    : instance_(instance) {
  if (instance.n() > budget.max_jobs || instance.machines > budget.max_machines)
    throw OracleRefusal("instance exceeds the non-preemptive oracle's enumeration caps");
  if (!instance.identical_machines())
    throw OracleRefusal("non-preemptive oracle requires identical machines");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() > budget.max_grid) throw OracleRefusal("grid exceeds the oracle cap");
  if (instance.n() == 0) {
    mask_weight_.assign(1, 0);
    best_.assign(1, Ext<K>(Power::to_num(0)));
    return;
  }
  const Deadline deadline(budget.max_seconds);
  const bool edf_only = instance.agreeable();

  const std::size_t size = 1ULL << instance.n();
  mask_weight_.assign(size, 0);
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    const int j = std::countr_zero(mask);
    mask_weight_[mask] = mask_weight_[mask ^ (1ULL << j)] + instance.job(j).weight;
  }

  const auto grid_index = [&](const Rational& t) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), t);
    if (it == grid.end() || *it != t)
      throw InternalError("time " + t.str() + " missing from the oracle grid");
    return static_cast<std::size_t>(it - grid.begin());
  };

  // h[mask][t] = min energy to run exactly `mask` on one machine that is
  // free from grid[t] on, each job at constant speed with start/completion
  // on the grid. Starting a job as early as its release and the previous
  // completion allow is never worse for a fixed completion, so starts are
  // pinned to max(grid[t], release). When the instance is agreeable only
  // the EDF order (ascending positions) is explored.
  std::vector<std::vector<Ext<K>>> h(size, std::vector<Ext<K>>(grid.size(), Ext<K>::inf()));
  for (std::size_t t = 0; t < grid.size(); ++t) h[0][t] = Ext<K>(Power::to_num(0));
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    deadline.check();
    std::vector<int> members;
    for (int j = 0; j < instance.n(); ++j)
      if ((mask >> j) & 1U) members.push_back(j);
    if (edf_only) members.resize(1);  // lowest position runs first
    for (std::size_t t = 0; t < grid.size(); ++t) {
      Ext<K> best = Ext<K>::inf();
      for (int j : members) {
        const Job& job = instance.job(j);
        const Rational start = max(grid[t], job.release);
        if (start >= job.deadline) continue;
        const std::size_t s = grid_index(start);
        const auto& tail_row = h[mask ^ (1ULL << j)];
        const Rational volume = *job.volume_on(0);
        for (std::size_t c = s + 1; c < grid.size() && grid[c] <= job.deadline; ++c) {
          const Ext<K>& tail = tail_row[c];
          if (!tail.is_finite()) continue;
          best = min(best, Ext<K>(power.energy(volume, grid[c] - start) + tail.value));
        }
      }
      h[mask][t] = best;
    }
  }

  // Identical machines: every machine prices a set the same way.
  std::vector<std::vector<Ext<K>>> machine_cost(1);
  auto& cost = machine_cost.front();
  cost.assign(size, Ext<K>::inf());
  for (std::uint64_t mask = 0; mask < size; ++mask) cost[mask] = h[mask][0];
  machine_cost.resize(static_cast<std::size_t>(instance.machines), cost);
  best_ = partition_table<Power>(instance.machines, machine_cost);
}

template <class Power>
long NonpreemptiveOracle<Power>::max_weight(const K& energy_budget) const {
  long best = 0;
  for (std::uint64_t mask = 0; mask < best_.size(); ++mask)
    if (best_[mask].le(energy_budget)) best = std::max(best, mask_weight_[mask]);
  return best;
}

template <class Power>
std::vector<typename Power::num_type> NonpreemptiveOracle<Power>::distinct_energies() const {
  std::vector<K> out;
  for (const auto& e : best_)
    if (e.is_finite()) out.push_back(e.value);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class Power>
long opt_nonpreemptive(const Instance& instance, const typename Power::num_type& energy_budget,
                       std::vector<Rational> grid, const Power& power, OracleBudget budget) {
  return NonpreemptiveOracle<Power>(instance, std::move(grid), power, budget)
      .max_weight(energy_budget);
}

template YdsResult<Rational> yds_min_energy(const std::vector<YdsJob>&, const PowerModel&);
template YdsResult<double> yds_min_energy(const std::vector<YdsJob>&, const RealPowerModel&);
template class PreemptiveOracle<PowerModel>;
template class PreemptiveOracle<RealPowerModel>;
template Ext<Rational> opt_preemptive(const Instance&, const Rational&, const PowerModel&,
                                      OracleBudget);
template Ext<double> opt_preemptive(const Instance&, const Rational&, const RealPowerModel&,
                                    OracleBudget);
template class NonpreemptiveOracle<PowerModel>;
template class NonpreemptiveOracle<RealPowerModel>;
template long opt_nonpreemptive(const Instance&, const Rational&, std::vector<Rational>,
                                const PowerModel&, OracleBudget);
template long opt_nonpreemptive(const Instance&, const double&, std::vector<Rational>,
                                const RealPowerModel&, OracleBudget);

}  // namespace speedsched::oracle
