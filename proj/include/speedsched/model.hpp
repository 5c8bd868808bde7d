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

#include "speedsched/errors.hpp"
#include "speedsched/power.hpp"
#include "speedsched/rational.hpp"
#include "speedsched/step_function.hpp"

namespace speedsched {

/// One job. `id` is the 1-based position in the input file; jobs inside an
/// Instance are stored sorted by non-decreasing deadline (ties broken by
/// input order), so a vector position is an EDF rank.
struct Job {
  int id = 0;
  Rational release;
  Rational deadline;
  long weight = 1;
  /// Processing volume per machine; nullopt = job cannot run there.
  std::vector<std::optional<Rational>> volume;

  const std::optional<Rational>& volume_on(int machine) const {
    return volume[static_cast<std::size_t>(machine)];
  }
};

struct Instance {
  int machines = 1;
  /// Power exponent; integral in exact mode.
  Rational alpha = 3;
  std::vector<Job> jobs;  // sorted by (deadline, input order)
  std::optional<long> demand;
  std::optional<Rational> budget;

  /// Validates fields, sorts jobs by deadline (stable), assigns ids by input
  /// position if not already set.
  static Instance create(int machines, Rational alpha, std::vector<Job> jobs,
                         std::optional<long> demand = std::nullopt,
                         std::optional<Rational> budget = std::nullopt);

  int n() const { return static_cast<int>(jobs.size()); }
  long total_weight() const;
  Rational min_release() const;
  Rational max_deadline() const;

  /// p_ij independent of i for every job.
  bool identical_machines() const;
  /// identical machines and a single common volume across jobs.
  bool equal_volume() const;
  /// r_i <= r_j  <=>  d_i <= d_j for all pairs (both-coordinate ties ok).
  bool agreeable() const;

  PowerModel power() const;  // throws WrongSolverError when alpha non-integral
  const Job& job(int pos) const { return jobs[static_cast<std::size_t>(pos)]; }
  int position_of_id(int id) const;
};

/// A contiguous run of one job on one machine at constant speed on [t0, t1).
struct Slice {
  int job = 0;  // position into Instance::jobs
  Rational t0, t1, speed;
};

/// Per-machine slice lists. Feasibility: slices on a machine pairwise
/// disjoint, each inside its job's window, all slices of a job on one
/// machine, and per scheduled job the slices sum to the exact volume.
struct SchedulePlan {
  std::vector<std::vector<Slice>> machines;

  static SchedulePlan empty(int machine_count) {
    SchedulePlan p;
    p.machines.resize(static_cast<std::size_t>(machine_count));
    return p;
  }

  bool is_empty() const;
  /// Machine running job `pos`, or -1 when unscheduled.
  int machine_of(int pos) const;
  /// Sum of len*speed over the job's slices.
  Rational scheduled_volume(int pos) const;
  /// Speed profile of one machine (sum of its slices).
  StepFunction profile(int machine) const;
};

struct PlanViolation {
  enum class Kind { Overlap, Window, Migration, VolumeMismatch, Malformed };
  Kind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<PlanViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks every SchedulePlan invariant; the report lists all violations.
ValidationReport validate_plan(const Instance& instance, const SchedulePlan& plan);

/// Total energy of a plan: sum over slices of (t1-t0)*P(speed).
/// Throws Error with the validation summary when the plan is malformed.
template <class Power>
typename Power::num_type energy_of(const Instance& instance, const SchedulePlan& plan,
                                   const Power& power);

/// Total weight of fully scheduled jobs. Throws on invalid plans.
long throughput_of(const Instance& instance, const SchedulePlan& plan);

/// Energy of a speed profile: ∫ P(s(t)) dt.
template <class Power>
typename Power::num_type profile_energy(const Power& power, const StepFunction& profile) {
  using K = typename Power::num_type;
  K total = Power::to_num(0);
  if (profile.is_zero()) return total;
  const auto& bounds = profile.bounds();
  const auto& values = profile.values();
  for (std::size_t i = 0; i < values.size(); ++i)
    total = total + power.P(Power::to_num(values[i])) * Power::to_num(bounds[i + 1] - bounds[i]);
  return total;
}

/// ∫ Q(s(t)) dt with Q(z) = P(z) - z P'(z).
template <class Power>
typename Power::num_type profile_q_energy(const Power& power, const StepFunction& profile) {
  using K = typename Power::num_type;
  K total = Power::to_num(0);
  if (profile.is_zero()) return total;
  const auto& bounds = profile.bounds();
  const auto& values = profile.values();
  for (std::size_t i = 0; i < values.size(); ++i)
    total = total + power.Q(Power::to_num(values[i])) * Power::to_num(bounds[i + 1] - bounds[i]);
  return total;
}

}  // namespace speedsched
