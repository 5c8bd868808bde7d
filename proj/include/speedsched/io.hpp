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
#include "speedsched/primal_dual.hpp"

namespace speedsched::io {

/// Instance files are JSON: {"alpha": int, "machines": int, "jobs":
/// [{"r","d","w","p"}...], "demand"?: int, "budget"?: rational}. Rationals
/// are integers or "num/den" strings; "p" is a scalar for identical machines
/// or a per-machine list (null = job cannot run there).
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string write_instance(const Instance& instance);  // canonical, round-trips

/// FNV-1a over the canonical serialization.
std::string instance_digest(const Instance& instance);

Rational parse_rational(const std::string& text);

/// Solver output with enough state to replay every certificate.
struct ResultFile {
  std::string solver;
  std::string digest;
  Instance instance;
  std::optional<Rational> demand;
  std::optional<Rational> budget;
  std::optional<Rational> eps;
  long throughput = 0;
  std::string energy;  // exact "num/den" in exact mode, decimal in float mode
  SchedulePlan plan;
  bool has_dual = false;
  pd::DualState<Rational> dual;
  long iterations = 0;
  double wall_ms = 0.0;
  std::string status;  // dichotomy status or "ok"
};

std::string write_result(const ResultFile& result);
ResultFile parse_result(const std::string& text);
ResultFile load_result(const std::string& path);

/// Replays a result's certificates: digest, plan validity, energy,
/// throughput, and the dual certificate when present. Returns the list of
/// failures (empty = intact).
std::vector<std::string> verify_result(const ResultFile& result);

/// Deterministic generators. `knapsack` maps items (value k_j, size c_j)
/// and capacity C to unit-volume jobs chained back to back: r_j = prefix
/// sum of sizes, d_j = r_j + c_j, w_j = k_j, budget = C.
Instance generate_knapsack(const std::vector<std::pair<long, long>>& items, long capacity,
                           int alpha);

struct GenParams {
  int jobs = 4;
  int machines = 1;
  int alpha = 3;
  long max_time = 8;          // horizon for releases/deadlines
  long max_volume = 3;        // per-job volume bound (agreeable kind)
  long max_weight = 3;
  Rational equal_volume = 1;  // the common volume (equal-volume kind)
};

Instance generate_agreeable(std::uint64_t seed, const GenParams& params);
Instance generate_equal_volume(std::uint64_t seed, const GenParams& params);

/// CSV row: instance, solver, n, m, alpha, demand_or_budget, throughput,
/// energy, iterations, ms.
std::string csv_header();
std::string csv_row(const std::string& instance_name, const std::string& solver,
                    const Instance& instance, const std::string& demand_or_budget,
                    long throughput, const std::string& energy, long iterations, double ms);

}  // namespace speedsched::io
