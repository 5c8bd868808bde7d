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

#include "speedsched/primal_dual.hpp"

namespace speedsched::dichotomy {

enum class Status { converged, budget_too_small, degenerate };

const char* status_name(Status s);

template <class K>
struct Result {
  Rational final_demand;         // the demand of the returned schedule
  pd::PdSolution<K> solution;
  int iterations = 0;            // energy-subroutine probes
  Status status = Status::budget_too_small;
};

/// Hard cap on bisection probes: ceil(log2(total_weight)) +
/// ceil(log2(1/eps)) + 32.
int iteration_cap(long total_weight, const Rational& eps, const Rational& budget);

/// Bisects the throughput demand over [0, total weight], probing the
/// energy-minimization subroutine, until the consumed energy lands in
/// [E, (1+eps)E]. Tracks the best probe whose energy stays within
/// (1+eps)E and falls back to it (status `degenerate`) if the cap trips;
/// `budget_too_small` when no probe with positive selected weight fits.
template <class Power>
Result<typename Power::num_type> maximize_throughput(const Instance& instance,
                                                     const Rational& budget, const Rational& eps,
                                                     const Power& power);

}  // namespace speedsched::dichotomy
