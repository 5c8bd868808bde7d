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

#include "speedsched/primal_dual.hpp"

#include <algorithm>

#include "speedsched/edf.hpp"

namespace speedsched::pd {

Rational truncated_weight(long job_weight, const Rational& demand, long set_weight) {
  return min(Rational(job_weight), demand - Rational(set_weight));
}

template <class Power>
std::vector<std::vector<std::optional<LambdaEntry<typename Power::num_type>>>> lambda_table(
    const Instance& instance, const std::vector<StepFunction>& profiles, std::uint64_t excluded,
    const Power& power) {
  using K = typename Power::num_type;
  std::vector<std::vector<std::optional<LambdaEntry<K>>>> table(
      static_cast<std::size_t>(instance.machines));
  for (int i = 0; i < instance.machines; ++i) {
    auto& row = table[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(instance.n()));
    for (int j = 0; j < instance.n(); ++j) {
      if ((excluded >> j) & 1U) continue;
      const Job& job = instance.job(j);
      const auto& volume = job.volume_on(i);
      if (!volume.has_value()) continue;
      auto fr = profiles[static_cast<std::size_t>(i)].fill(job.release, job.deadline, *volume);
      row[static_cast<std::size_t>(j)] =
          LambdaEntry<K>{fr.level, power.Pprime(Power::to_num(fr.level)), std::move(fr.delta)};
    }
  }
  return table;
}

template <class Power>
PdRun<Power>::PdRun(const Instance& instance, Rational demand, const Power& power)
    : instance_(instance), power_(power), demand_(std::move(demand)) {
  if (demand_.sign() < 0) throw ParseError("negative throughput demand");
  if (demand_ > Rational(instance.total_weight()))
    throw InfeasibleError("demand " + demand_.str() + " exceeds total weight " +
                          std::to_string(instance.total_weight()));
  const auto nn = static_cast<std::size_t>(instance.n());
  profiles_.resize(static_cast<std::size_t>(instance.machines));
  dual_.gamma.assign(nn, Power::to_num(0));
  dual_.price.assign(nn, Power::to_num(0));
  machine_of_.assign(nn, -1);
  fill_of_.resize(nn);
  lambda_of_.assign(nn, Power::to_num(0));
}

template <class Power>
bool PdRun<Power>::done() const {
  return Rational(selected_weight_) >= demand_;
}

template <class Power>
RoundOutcome<typename Power::num_type> PdRun<Power>::round() {
  if (done()) throw InternalError("round() called after demand was met");
  auto table = lambda_table(instance_, profiles_, dual_.selected, power_);

  // delta = min over live pairs of (p_ij*lambda_ij - price_j) / w_j^T.
  int best_i = -1, best_j = -1;
  K best_delta{};
  std::vector<Rational> trunc(static_cast<std::size_t>(instance_.n()));
  for (int j = 0; j < instance_.n(); ++j)
    if (!dual_.is_selected(j))
      trunc[static_cast<std::size_t>(j)] =
          truncated_weight(instance_.job(j).weight, demand_, selected_weight_);
  for (int i = 0; i < instance_.machines; ++i) {
    for (int j = 0; j < instance_.n(); ++j) {
      const auto& entry = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!entry.has_value()) continue;
      const Job& job = instance_.job(j);
      const K target = entry->lambda * Power::to_num(*job.volume_on(i));
      const K gap = target - dual_.price[static_cast<std::size_t>(j)];
      const K delta = gap / Power::to_num(trunc[static_cast<std::size_t>(j)]);
      if (best_i < 0 || delta < best_delta) {
        best_i = i;
        best_j = j;
        best_delta = delta;
      }
    }
  }
  if (best_i < 0)
    throw InfeasibleError("no assignable job left but demand not met");
  if constexpr (Power::is_exact()) {
    if (best_delta.sign() < 0)
      throw InternalError("negative beta raise; prices overshot a live constraint");
  }

  // Raise beta on the current selected set and advance all live prices.
  dual_.chain.push_back({dual_.selected, selected_weight_, best_delta});
  for (int j = 0; j < instance_.n(); ++j)
    if (!dual_.is_selected(j))
      dual_.price[static_cast<std::size_t>(j)] =
          dual_.price[static_cast<std::size_t>(j)] +
          Power::to_num(trunc[static_cast<std::size_t>(j)]) * best_delta;

  // Commit the winner; all other tentative fills are discarded.
  auto& entry = table[static_cast<std::size_t>(best_i)][static_cast<std::size_t>(best_j)];
  const Job& job = instance_.job(best_j);
  const auto jj = static_cast<std::size_t>(best_j);
  dual_.gamma[jj] = entry->lambda * Power::to_num(*job.volume_on(best_i));
  dual_.selected |= (1ULL << best_j);
  machine_of_[jj] = best_i;
  lambda_of_[jj] = entry->lambda;
  fill_of_[jj] = entry->delta;
  profiles_[static_cast<std::size_t>(best_i)] =
      profiles_[static_cast<std::size_t>(best_i)].add(entry->delta);
  order_.push_back(best_j);
  selected_weight_ += job.weight;
  ++rounds_;
  if constexpr (Power::is_exact()) {
    if (dual_.price[jj] != dual_.gamma[jj])
      throw InternalError("winner price does not match its tight constraint");
  }
  return {best_i, best_j, best_delta};
}

template <class Power>
PdSolution<typename Power::num_type> PdRun<Power>::finish() {
  PdSolution<K> sol;
  sol.demand = demand_;
  sol.selection_order = order_;
  sol.machine_of = machine_of_;
  sol.fill_of = fill_of_;
  sol.lambda_of = lambda_of_;
  sol.profiles = profiles_;
  sol.dual = dual_;
  sol.rounds = rounds_;
  sol.plan = build_edf_plan(instance_, machine_of_, profiles_);
  K energy = Power::to_num(0);
  for (const StepFunction& p : profiles_) energy = energy + profile_energy(power_, p);
  sol.energy = energy;
  if constexpr (Power::is_exact()) {
    // The EDF plan must realize exactly the profile energy, machine by machine.
    for (int i = 0; i < instance_.machines; ++i) {
      K plan_side = Power::to_num(0);
      for (const Slice& s : sol.plan.machines[static_cast<std::size_t>(i)])
        plan_side = plan_side + power_.P(s.speed) * (s.t1 - s.t0);
      if (plan_side != profile_energy(power_, profiles_[static_cast<std::size_t>(i)]))
        throw InternalError("EDF plan energy differs from profile energy on machine " +
                            std::to_string(i + 1));
    }
  }
  return sol;
}

template <class Power>
PdSolution<typename Power::num_type> solve(const Instance& instance, const Rational& demand,
                                           const Power& power) {
  PdRun<Power> run(instance, demand, power);
  while (!run.done()) run.round();
  return run.finish();
}

SchedulePlan build_edf_plan(const Instance& instance, const std::vector<int>& machine_of,
                            const std::vector<StepFunction>& profiles) {
  SchedulePlan plan = SchedulePlan::empty(instance.machines);
  for (int i = 0; i < instance.machines; ++i) {
    std::vector<EdfItem> items;
    for (int j = 0; j < instance.n(); ++j)
      if (machine_of[static_cast<std::size_t>(j)] == i) {
        const Job& job = instance.job(j);
        items.push_back({j, job.release, job.deadline, *job.volume_on(i)});
      }
    if (items.empty()) continue;
    plan.machines[static_cast<std::size_t>(i)] =
        edf_schedule(std::move(items), profiles[static_cast<std::size_t>(i)]);
  }
  return plan;
}

template <class Power>
DualReport verify_dual(const Instance& instance, const PdSolution<typename Power::num_type>& sol,
                       const Power& power) {
  using K = typename Power::num_type;
  DualReport report;

  if constexpr (Power::is_exact()) {
    for (const auto& link : sol.dual.chain)
      if (link.beta.sign() < 0) {
        report.violations.push_back("negative beta in the chain");
        break;
      }
  }

  // Recompute prices from the chain and check the stored ones.
  for (int j = 0; j < instance.n(); ++j) {
    K price = Power::to_num(0);
    for (const auto& link : sol.dual.chain) {
      if ((link.set >> j) & 1U) continue;
      price = price + Power::to_num(truncated_weight(instance.job(j).weight, sol.demand,
                                                     link.set_weight)) *
                          link.beta;
    }
    if constexpr (Power::is_exact()) {
      if (price != sol.dual.price[static_cast<std::size_t>(j)])
        report.violations.push_back("stored price of job " + std::to_string(instance.job(j).id) +
                                    " does not match the chain");
    }

    const Job& job = instance.job(j);
    const bool selected = sol.dual.is_selected(j);
    const K gamma = selected ? sol.dual.gamma[static_cast<std::size_t>(j)] : Power::to_num(0);
    for (int i = 0; i < instance.machines; ++i) {
      const auto& volume = job.volume_on(i);
      if (!volume.has_value()) continue;
      const StepFunction& v = sol.profiles[static_cast<std::size_t>(i)];
      auto fr = v.fill(job.release, job.deadline, *volume);
      const K lambda_hat = power.Pprime(Power::to_num(fr.level));

      // Level never exceeds the filled profile over the window (dual
      // constraint on P'(v_i + s_ij), exact regardless of mode).
      const StepFunction filled = v.add(fr.delta);
      if (filled.window_min(job.release, job.deadline) < fr.level)
        report.violations.push_back("fill level above filled profile for job " +
                                    std::to_string(job.id) + " on machine " + std::to_string(i + 1));

      const K rhs = gamma + lambda_hat * Power::to_num(*volume);
      if (!Power::le(price, rhs))
        report.violations.push_back("price constraint violated for job " + std::to_string(job.id) +
                                    " on machine " + std::to_string(i + 1));
    }
  }
  return report;
}

template <class Power>
GuaranteeReport<typename Power::num_type> guarantee_report(
    const Instance& instance, const PdSolution<typename Power::num_type>& sol,
    const Rational& demand, const Power& power) {
  using K = typename Power::num_type;
  GuaranteeReport<K> report;
  report.machine_pair_sum.assign(static_cast<std::size_t>(instance.machines), Power::to_num(0));
  report.machine_energy.assign(static_cast<std::size_t>(instance.machines), Power::to_num(0));

  K pair_sum = Power::to_num(0);
  K gamma_sum = Power::to_num(0);
  for (int j : sol.selection_order) {
    const auto jj = static_cast<std::size_t>(j);
    const int i = sol.machine_of[jj];
    const K term = sol.lambda_of[jj] * Power::to_num(*instance.job(j).volume_on(i));
    pair_sum = pair_sum + term;
    report.machine_pair_sum[static_cast<std::size_t>(i)] =
        report.machine_pair_sum[static_cast<std::size_t>(i)] + term;
    gamma_sum = gamma_sum + sol.dual.gamma[jj];
  }
  report.assigned_pair_sum = pair_sum;

  K knapsack = Power::to_num(0);
  for (const auto& link : sol.dual.chain)
    knapsack = knapsack + link.beta * Power::to_num(demand - Rational(link.set_weight));
  report.knapsack_sum = knapsack;

  K total_energy = Power::to_num(0);
  K total_q = Power::to_num(0);
  for (int i = 0; i < instance.machines; ++i) {
    const auto& profile = sol.profiles[static_cast<std::size_t>(i)];
    report.machine_energy[static_cast<std::size_t>(i)] = profile_energy(power, profile);
    total_energy = total_energy + report.machine_energy[static_cast<std::size_t>(i)];
    total_q = total_q + profile_q_energy(power, profile);
  }

  if (!Power::le(pair_sum, Power::to_num(2) * knapsack))
    report.violations.push_back("knapsack charging bound violated: pair sum exceeds 2x beta sum");
  for (int i = 0; i < instance.machines; ++i)
    if (!Power::le(report.machine_energy[static_cast<std::size_t>(i)],
                   report.machine_pair_sum[static_cast<std::size_t>(i)]))
      report.violations.push_back("telescoping bound violated on machine " + std::to_string(i + 1));

  const K factor = Power::to_num(2) * power.steepness() + Power::to_num(2);
  report.main_lhs = factor * knapsack + total_q - gamma_sum;
  report.main_rhs = total_energy;
  if (!Power::le(report.main_rhs, report.main_lhs))
    report.violations.push_back("combined guarantee inequality violated");
  return report;
}

// Explicit instantiations for the exact and floating numeric modes.
template std::vector<std::vector<std::optional<LambdaEntry<Rational>>>> lambda_table(
    const Instance&, const std::vector<StepFunction>&, std::uint64_t, const PowerModel&);
template std::vector<std::vector<std::optional<LambdaEntry<double>>>> lambda_table(
    const Instance&, const std::vector<StepFunction>&, std::uint64_t, const RealPowerModel&);
template class PdRun<PowerModel>;
template class PdRun<RealPowerModel>;
template PdSolution<Rational> solve(const Instance&, const Rational&, const PowerModel&);
template PdSolution<double> solve(const Instance&, const Rational&, const RealPowerModel&);
template DualReport verify_dual(const Instance&, const PdSolution<Rational>&, const PowerModel&);
template DualReport verify_dual(const Instance&, const PdSolution<double>&, const RealPowerModel&);
template GuaranteeReport<Rational> guarantee_report(const Instance&, const PdSolution<Rational>&,
                                                    const Rational&, const PowerModel&);
template GuaranteeReport<double> guarantee_report(const Instance&, const PdSolution<double>&,
                                                  const Rational&, const RealPowerModel&);

}  // namespace speedsched::pd
