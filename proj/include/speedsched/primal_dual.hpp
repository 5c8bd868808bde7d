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
#include <optional>
#include <string>
#include <vector>

#include "speedsched/model.hpp"

namespace speedsched::pd {

/// Truncated weight min{w_j, W - w(S)} of the knapsack inequality family.
Rational truncated_weight(long job_weight, const Rational& demand, long set_weight);

/// One chain element: the selected set at the start of a round and the
/// amount its dual variable was raised.
template <class K>
struct ChainLink {
  std::uint64_t set = 0;  // bitmask over job positions
  long set_weight = 0;
  K beta{};
};

/// Dual bookkeeping. Only sets that were the current selection at the start
/// of some round carry a positive beta; every other set's beta is zero and
/// is not stored.
template <class K>
struct DualState {
  std::vector<ChainLink<K>> chain;
  std::vector<K> gamma;  // per job position; 0 until selected
  std::vector<K> price;  // per job position: sum over chain of w_j^S * beta_S
  std::uint64_t selected = 0;

  bool is_selected(int pos) const { return (selected >> pos) & 1U; }
};

template <class K>
struct LambdaEntry {
  Rational level;      // water level of the tentative fill
  K lambda{};          // P'(level)
  StepFunction delta;  // the tentative fill itself
};

/// One lambda per unselected job and machine, from a tentative water-fill of
/// p_ij into the machine's current profile over the job's window. Profiles
/// are not modified. Pairs with absent p_ij and excluded jobs are nullopt.
template <class Power>
std::vector<std::vector<std::optional<LambdaEntry<typename Power::num_type>>>> lambda_table(
    const Instance& instance, const std::vector<StepFunction>& profiles, std::uint64_t excluded,
    const Power& power);

template <class K>
struct RoundOutcome {
  int machine = -1;
  int job = -1;   // position
  K delta{};      // raise of beta on the pre-round selected set
};

template <class K>
struct PdSolution {
  Rational demand;
  std::vector<int> selection_order;          // positions in pick order
  std::vector<int> machine_of;               // per position; -1 unassigned
  std::vector<StepFunction> fill_of;         // per position; the winning delta
  std::vector<K> lambda_of;                  // per position; winner lambda
  std::vector<StepFunction> profiles;        // final per-machine speed s_i
  SchedulePlan plan;
  K energy{};
  DualState<K> dual;
  int rounds = 0;

  long selected_weight(const Instance& instance) const {
    long w = 0;
    for (int pos : selection_order) w += instance.job(pos).weight;
    return w;
  }
};

/// Driver for the primal-dual rounds; exposed so tests can replay traces
/// round by round.
template <class Power>
class PdRun {
 public:
  using K = typename Power::num_type;

  PdRun(const Instance& instance, Rational demand, const Power& power);

  bool done() const;  // selected weight >= demand
  /// Executes one round: raises beta on the current selected set until the
  /// first constraint is tight, assigns that job, commits its fill.
  RoundOutcome<K> round();

  const std::vector<StepFunction>& profiles() const { return profiles_; }
  const DualState<K>& dual() const { return dual_; }
  const std::vector<int>& selection_order() const { return order_; }
  long selected_weight() const { return selected_weight_; }

  PdSolution<K> finish();

 private:
  const Instance& instance_;
  const Power& power_;
  Rational demand_;
  std::vector<StepFunction> profiles_;
  DualState<K> dual_;
  std::vector<int> order_;
  std::vector<int> machine_of_;
  std::vector<StepFunction> fill_of_;
  std::vector<K> lambda_of_;
  long selected_weight_ = 0;
  int rounds_ = 0;
};

/// Algorithm: water-fill tentative lambdas each round, raise beta on the
/// current selected set to the first tight knapsack constraint, assign the
/// winning (machine, job), repeat until the demand is covered; then schedule
/// each machine earliest-deadline-first at its final speed profile.
template <class Power>
PdSolution<typename Power::num_type> solve(const Instance& instance, const Rational& demand,
                                           const Power& power);

/// Preemptive EDF simulation on each machine at its profile speed.
/// machine_of[pos] = machine index or -1. Every assigned job must complete
/// by its deadline; a miss is an internal invariant failure.
SchedulePlan build_edf_plan(const Instance& instance, const std::vector<int>& machine_of,
                            const std::vector<StepFunction>& profiles);

struct DualReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Feasibility check of the dual certificate. Witnesses are re-fills on the
/// final profiles: for every pair, lambda_ij := P'(level of filling p_ij
/// into final v_i over the job window). Checks the level never exceeds the
/// filled profile on the window and that prices respect
/// gamma_j + lambda_ij * p_ij (gamma 0 for unselected jobs).
template <class Power>
DualReport verify_dual(const Instance& instance, const PdSolution<typename Power::num_type>& sol,
                       const Power& power);

template <class K>
struct GuaranteeReport {
  K assigned_pair_sum{};    // sum of p_ij*lambda_ij over assigned pairs
  K knapsack_sum{};         // sum of beta_S*(W - w(S)) over the chain
  std::vector<K> machine_pair_sum;  // per machine, sum of lambda*p of its jobs
  std::vector<K> machine_energy;    // per machine, ∫P(s_i)
  K main_lhs{};             // (2*steepness+2)*knapsack_sum + ∫Q - Σgamma
  K main_rhs{};             // total energy Σ∫P(s_i)
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Asserts the per-run certificate inequalities: the knapsack-charging bound
/// (pair sum <= 2 * knapsack sum), the per-machine telescoping bound
/// (pair sum >= machine energy), and the combined guarantee inequality.
template <class Power>
GuaranteeReport<typename Power::num_type> guarantee_report(
    const Instance& instance, const PdSolution<typename Power::num_type>& sol,
    const Rational& demand, const Power& power);

}  // namespace speedsched::pd
