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

#include "speedsched/model.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace speedsched {

Instance Instance::create(int machines, Rational alpha, std::vector<Job> jobs,
                          std::optional<long> demand, std::optional<Rational> budget) {
  if (machines < 1) throw ParseError("machine count must be >= 1");
  if (alpha < Rational(1)) throw ParseError("alpha must be >= 1");
  if (jobs.size() > 62) throw ParseError("instance too large (at most 62 jobs supported)");
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    Job& job = jobs[j];
    if (job.id == 0) job.id = static_cast<int>(j) + 1;
    if (job.release >= job.deadline)
      throw ParseError("job " + std::to_string(job.id) +
                       ": release must be strictly before deadline");
    if (job.release.sign() < 0) throw ParseError("job " + std::to_string(job.id) +
                                                 ": negative release date");
    if (job.weight < 1)
      throw ParseError("job " + std::to_string(job.id) + ": weight must be a positive integer");
    if (job.volume.size() != static_cast<std::size_t>(machines))
      throw ParseError("job " + std::to_string(job.id) + ": expected " +
                       std::to_string(machines) + " volume entries");
    bool any = false;
    for (const auto& p : job.volume) {
      if (p.has_value()) {
        any = true;
        if (p->sign() <= 0)
          throw ParseError("job " + std::to_string(job.id) + ": volumes must be positive");
      }
    }
    if (!any)
      throw ParseError("job " + std::to_string(job.id) + ": no machine can run this job");
  }
  std::stable_sort(jobs.begin(), jobs.end(),
                   [](const Job& a, const Job& b) { return a.deadline < b.deadline; });
  if (demand && *demand < 0) throw ParseError("demand must be nonnegative");
  if (budget && budget->sign() < 0) throw ParseError("budget must be nonnegative");
  Instance inst;
  inst.machines = machines;
  inst.alpha = std::move(alpha);
  inst.jobs = std::move(jobs);
  inst.demand = demand;
  inst.budget = std::move(budget);
  return inst;
}

long Instance::total_weight() const {
  long w = 0;
  for (const Job& j : jobs) w += j.weight;
  return w;
}

Rational Instance::min_release() const {
  Rational r = jobs.front().release;
  for (const Job& j : jobs) r = min(r, j.release);
  return r;
}

Rational Instance::max_deadline() const {
  Rational d = jobs.front().deadline;
  for (const Job& j : jobs) d = max(d, j.deadline);
  return d;
}

bool Instance::identical_machines() const {
  for (const Job& j : jobs) {
    if (!j.volume.front().has_value()) return false;
    for (const auto& p : j.volume)
      if (!p.has_value() || *p != *j.volume.front()) return false;
  }
  return true;
}

bool Instance::equal_volume() const {
  if (!identical_machines() || jobs.empty()) return jobs.empty();
  const Rational& p = *jobs.front().volume.front();
  for (const Job& j : jobs)
    if (*j.volume.front() != p) return false;
  return true;
}

bool Instance::agreeable() const {
  for (std::size_t i = 0; i < jobs.size(); ++i)
    for (std::size_t j = i + 1; j < jobs.size(); ++j) {
      const bool r_le = jobs[i].release <= jobs[j].release;
      const bool r_ge = jobs[j].release <= jobs[i].release;
      const bool d_le = jobs[i].deadline <= jobs[j].deadline;
      const bool d_ge = jobs[j].deadline <= jobs[i].deadline;
      if (r_le != d_le || r_ge != d_ge) return false;
    }
  return true;
}

PowerModel Instance::power() const {
  if (!alpha.is_integer())
    throw WrongSolverError("non-integer alpha requires the floating mode");
  return PowerModel(static_cast<int>(alpha.to_long()));
}

int Instance::position_of_id(int id) const {
  for (int pos = 0; pos < n(); ++pos)
    if (jobs[static_cast<std::size_t>(pos)].id == id) return pos;
  throw ParseError("no job with id " + std::to_string(id));
}

bool SchedulePlan::is_empty() const {
  for (const auto& m : machines)
    if (!m.empty()) return false;
  return true;
}

int SchedulePlan::machine_of(int pos) const {
  for (std::size_t i = 0; i < machines.size(); ++i)
    for (const Slice& s : machines[i])
      if (s.job == pos) return static_cast<int>(i);
  return -1;
}

Rational SchedulePlan::scheduled_volume(int pos) const {
  Rational v = 0;
  for (const auto& m : machines)
    for (const Slice& s : m)
      if (s.job == pos) v += (s.t1 - s.t0) * s.speed;
  return v;
}

StepFunction SchedulePlan::profile(int machine) const {
  StepFunction f;
  for (const Slice& s : machines[static_cast<std::size_t>(machine)])
    f = f.add(StepFunction::constant(s.t0, s.t1, s.speed));
  return f;
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) os << "; ";
    os << violations[i].detail;
  }
  return os.str();
}

ValidationReport validate_plan(const Instance& instance, const SchedulePlan& plan) {
  using Kind = PlanViolation::Kind;
  ValidationReport report;
  const auto flag = [&](Kind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  if (plan.machines.size() != static_cast<std::size_t>(instance.machines)) {
    flag(Kind::Malformed, "plan has " + std::to_string(plan.machines.size()) +
                              " machines, instance has " + std::to_string(instance.machines));
    return report;
  }

  std::map<int, int> first_machine;
  for (int i = 0; i < instance.machines; ++i) {
    auto slices = plan.machines[static_cast<std::size_t>(i)];
    std::sort(slices.begin(), slices.end(),
              [](const Slice& a, const Slice& b) { return a.t0 < b.t0; });
    for (std::size_t k = 0; k < slices.size(); ++k) {
      const Slice& s = slices[k];
      if (s.job < 0 || s.job >= instance.n()) {
        flag(Kind::Malformed, "slice references unknown job index " + std::to_string(s.job));
        continue;
      }
      const Job& job = instance.job(s.job);
      if (s.t0 >= s.t1 || s.speed.sign() <= 0)
        flag(Kind::Malformed, "degenerate slice of job " + std::to_string(job.id));
      if (s.t0 < job.release || s.t1 > job.deadline)
        flag(Kind::Window, "job " + std::to_string(job.id) + " runs on [" + s.t0.str() + ", " +
                               s.t1.str() + ") outside its window [" + job.release.str() + ", " +
                               job.deadline.str() + "]");
      if (k > 0 && slices[k - 1].t1 > s.t0)
        flag(Kind::Overlap, "overlap on machine " + std::to_string(i + 1) + " at t=" + s.t0.str());
      const auto [it, inserted] = first_machine.emplace(s.job, i);
      if (!inserted && it->second != i)
        flag(Kind::Migration, "job " + std::to_string(job.id) + " migrates between machines " +
                                  std::to_string(it->second + 1) + " and " + std::to_string(i + 1));
    }
  }

  for (const auto& [pos, machine] : first_machine) {
    const Job& job = instance.job(pos);
    const auto& expected = job.volume_on(machine);
    const Rational got = plan.scheduled_volume(pos);
    if (!expected.has_value())
      flag(Kind::Malformed,
           "job " + std::to_string(job.id) + " cannot run on machine " + std::to_string(machine + 1));
    else if (got != *expected)
      flag(Kind::VolumeMismatch, "job " + std::to_string(job.id) + " scheduled volume " +
                                     got.str() + " != required " + expected->str());
  }
  return report;
}

template <class Power>
typename Power::num_type energy_of(const Instance& instance, const SchedulePlan& plan,
                                   const Power& power) {
  const ValidationReport report = validate_plan(instance, plan);
  for (const PlanViolation& v : report.violations)
    if (v.kind != PlanViolation::Kind::VolumeMismatch)
      throw Error("invalid plan: " + report.summary());
  using K = typename Power::num_type;
  K total = Power::to_num(0);
  for (const auto& machine : plan.machines)
    for (const Slice& s : machine)
      total = total + power.P(Power::to_num(s.speed)) * Power::to_num(s.t1 - s.t0);
  return total;
}

template Rational energy_of(const Instance&, const SchedulePlan&, const PowerModel&);
template double energy_of(const Instance&, const SchedulePlan&, const RealPowerModel&);

long throughput_of(const Instance& instance, const SchedulePlan& plan) {
  const ValidationReport report = validate_plan(instance, plan);
  if (!report.ok()) throw Error("invalid plan: " + report.summary());
  long total = 0;
  for (int pos = 0; pos < instance.n(); ++pos)
    if (plan.machine_of(pos) >= 0) total += instance.job(pos).weight;
  return total;
}

}  // namespace speedsched
