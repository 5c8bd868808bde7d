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

#include "speedsched/dichotomy.hpp"

namespace speedsched::dichotomy {

const char* status_name(Status s) {
  switch (s) {
    case Status::converged: return "converged";
    case Status::budget_too_small: return "budget-too-small";
    case Status::degenerate: return "degenerate";
  }
  return "?";
}

namespace {

// Smallest k >= 0 with 2^k >= q, i.e. ceil(log2(q)) for q >= 1; 0 for q < 1.
int ceil_log2(const Rational& q) {
  int k = 0;
  Rational pow2 = 1;
  while (pow2 < q) {
    pow2 *= 2;
    ++k;
  }
  return k;
}

}  // namespace

int iteration_cap(long total_weight, const Rational& eps, const Rational& /*budget*/) {
  if (total_weight < 1 || eps.sign() <= 0)
    throw ParseError("iteration cap needs positive weight and epsilon");
  return ceil_log2(Rational(total_weight)) + ceil_log2(Rational(1) / eps) + 32;
}

template <class Power>
Result<typename Power::num_type> maximize_throughput(const Instance& instance,
                                                     const Rational& budget, const Rational& eps,
                                                     const Power& power) {
  using K = typename Power::num_type;
  if (eps.sign() <= 0) throw ParseError("epsilon must be positive");
  if (budget.sign() < 0) throw ParseError("budget must be nonnegative");

  Result<K> result;
  const K budget_num = Power::to_num(budget);
  const K relaxed = Power::to_num((Rational(1) + eps) * budget);
  const long total = instance.jobs.empty() ? 0 : instance.total_weight();

  if (total == 0) {
    result.final_demand = 0;
    result.solution = pd::solve(instance, Rational(0), power);
    result.status = Status::converged;
    return result;
  }

  auto probe = [&](const Rational& w) {
    ++result.iterations;
    return pd::solve(instance, w, power);
  };

  // Full demand within budget: done before any bisection.
  {
    auto full = probe(Rational(total));
    if (Power::le(full.energy, relaxed)) {
      result.final_demand = total;
      result.solution = std::move(full);
      result.status = Status::converged;
      return result;
    }
  }

  const int cap = iteration_cap(total, eps, budget);
  bool have_best = false;
  pd::PdSolution<K> best;
  Rational best_demand = 0;

  Rational lo = 0;
  Rational hi = total;
  Rational w = (lo + hi) / 2;
  while (result.iterations < cap) {
    auto sol = probe(w);
    const bool fits_relaxed = Power::le(sol.energy, relaxed);
    if (fits_relaxed && !sol.selection_order.empty() &&
        (!have_best || best_demand < w)) {
      best = sol;
      best_demand = w;
      have_best = true;
    }
    const bool below = sol.energy < budget_num;
    if (!below && fits_relaxed) {
      // E <= E(W) <= (1+eps)E: the loop's exit band.
      result.final_demand = w;
      result.solution = std::move(sol);
      result.status = Status::converged;
      return result;
    }
    if (below)
      lo = w;
    else
      hi = w;
    w = (lo + hi) / 2;
  }

  if (have_best) {
    result.final_demand = best_demand;
    result.solution = std::move(best);
    result.status = Status::degenerate;
  } else {
    result.final_demand = 0;
    result.solution = pd::solve(instance, Rational(0), power);
    result.status = Status::budget_too_small;
  }
  return result;
}

template Result<Rational> maximize_throughput(const Instance&, const Rational&, const Rational&,
                                              const PowerModel&);
template Result<double> maximize_throughput(const Instance&, const Rational&, const Rational&,
                                            const RealPowerModel&);

}  // namespace speedsched::dichotomy
