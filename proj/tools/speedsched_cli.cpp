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

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "speedsched/dichotomy.hpp"
#include "speedsched/dp_agreeable.hpp"
#include "speedsched/dp_equal.hpp"
#include "speedsched/io.hpp"
#include "speedsched/oracle.hpp"
#include "speedsched/primal_dual.hpp"

namespace {

using namespace speedsched;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitOracleRefusal = 3;
constexpr int kExitInternal = 4;

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + out_path);
    out << text;
  }
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

struct CommonOpts {
  std::string instance_path;
  std::string out_path;
  bool csv = false;
  bool use_float = false;
};

Instance load_checked(const CommonOpts& opts) {
  Instance inst = io::load_instance(opts.instance_path);
  if (!inst.alpha.is_integer() && !opts.use_float)
    throw ParseError("non-integer alpha requires --float");
  return inst;
}

Rational required_demand(const Instance& inst, const std::string& flag) {
  if (!flag.empty()) return io::parse_rational(flag);
  if (inst.demand) return Rational(*inst.demand);
  throw ParseError("no throughput demand: pass --demand or put \"demand\" in the instance");
}

Rational required_budget(const Instance& inst, const std::string& flag) {
  if (!flag.empty()) return io::parse_rational(flag);
  if (inst.budget) return *inst.budget;
  throw ParseError("no energy budget: pass --budget or put \"budget\" in the instance");
}

template <class Power>
io::ResultFile pd_energy_result(const Instance& inst, const Rational& demand, const Power& power,
                                const CommonOpts& opts) {
  const Stopwatch watch;
  auto sol = pd::solve(inst, demand, power);
  io::ResultFile result;
  result.solver = "pd-energy";
  result.instance = inst;
  result.digest = io::instance_digest(inst);
  result.demand = demand;
  result.throughput = sol.selected_weight(inst);
  if constexpr (Power::is_exact()) {
    result.energy = sol.energy.str();
    result.has_dual = true;
    result.dual = sol.dual;
  } else {
    result.energy = format_double(sol.energy);
  }
  result.plan = sol.plan;
  result.iterations = sol.rounds;
  result.wall_ms = watch.ms();
  result.status = "ok";
  (void)opts;
  return result;
}

int run_pd_energy(const CommonOpts& opts, const std::string& demand_flag) {
  const Instance inst = load_checked(opts);
  const Rational demand = required_demand(inst, demand_flag);
  io::ResultFile result;
  if (opts.use_float)
    result = pd_energy_result(inst, demand, RealPowerModel(inst.alpha.to_double()), opts);
  else
    result = pd_energy_result(inst, demand, inst.power(), opts);
  if (opts.csv)
    emit(io::csv_row(opts.instance_path, result.solver, inst, demand.str(), result.throughput,
                     result.energy, result.iterations, result.wall_ms),
         opts.out_path);
  else
    emit(io::write_result(result), opts.out_path);
  return kExitOk;
}

template <class Power>
int run_pd_throughput_with(const Instance& inst, const Rational& budget, const Rational& eps,
                           const Power& power, const CommonOpts& opts) {
  const Stopwatch watch;
  auto res = dichotomy::maximize_throughput(inst, budget, eps, power);
  io::ResultFile result;
  result.solver = "pd-throughput";
  result.instance = inst;
  result.digest = io::instance_digest(inst);
  result.demand = res.final_demand;
  result.budget = budget;
  result.eps = eps;
  result.throughput = res.solution.selected_weight(inst);
  if constexpr (Power::is_exact()) {
    result.energy = res.solution.energy.str();
    result.has_dual = true;
    result.dual = res.solution.dual;
  } else {
    result.energy = format_double(res.solution.energy);
  }
  result.plan = res.solution.plan;
  result.iterations = res.iterations;
  result.wall_ms = watch.ms();
  result.status = dichotomy::status_name(res.status);
  if (opts.csv)
    emit(io::csv_row(opts.instance_path, result.solver, inst, budget.str(), result.throughput,
                     result.energy, result.iterations, result.wall_ms),
         opts.out_path);
  else
    emit(io::write_result(result), opts.out_path);
  return res.status == dichotomy::Status::budget_too_small ? kExitInfeasible : kExitOk;
}

int run_pd_throughput(const CommonOpts& opts, const std::string& budget_flag,
                      const std::string& eps_flag) {
  const Instance inst = load_checked(opts);
  const Rational budget = required_budget(inst, budget_flag);
  const Rational eps = io::parse_rational(eps_flag.empty() ? "1/100" : eps_flag);
  if (opts.use_float)
    return run_pd_throughput_with(inst, budget, eps, RealPowerModel(inst.alpha.to_double()), opts);
  return run_pd_throughput_with(inst, budget, eps, inst.power(), opts);
}

template <class Maker>
int run_dp(const CommonOpts& opts, const std::string& budget_flag, const char* solver_name,
           Maker make) {
  const Instance inst = load_checked(opts);
  const Rational budget = required_budget(inst, budget_flag);
  const Stopwatch watch;
  io::ResultFile result;
  result.solver = solver_name;
  result.instance = inst;
  result.digest = io::instance_digest(inst);
  result.budget = budget;
  if (opts.use_float) {
    const RealPowerModel power(inst.alpha.to_double());
    auto out = make(inst, budget.to_double(), power);
    result.throughput = out.weight;
    result.energy = format_double(out.energy);
    result.plan = out.plan;
    result.iterations = static_cast<long>(out.states);
  } else {
    const PowerModel power = inst.power();
    auto out = make(inst, budget, power);
    result.throughput = out.weight;
    result.energy = out.energy.str();
    result.plan = out.plan;
    result.iterations = static_cast<long>(out.states);
  }
  result.wall_ms = watch.ms();
  result.status = "ok";
  if (opts.csv)
    emit(io::csv_row(opts.instance_path, result.solver, inst, budget.str(), result.throughput,
                     result.energy, result.iterations, result.wall_ms),
         opts.out_path);
  else
    emit(io::write_result(result), opts.out_path);
  return kExitOk;
}

int run_oracle(const CommonOpts& opts, const std::string& demand_flag,
               const std::string& budget_flag, const std::string& grid_name) {
  const Instance inst = load_checked(opts);
  if (opts.use_float) throw ParseError("the oracle runs in exact mode only");
  const PowerModel power = inst.power();
  const Stopwatch watch;
  std::ostringstream body;
  std::string demand_or_budget;
  long throughput = 0;
  std::string energy;
  if (!demand_flag.empty() || inst.demand) {
    const Rational demand = required_demand(inst, demand_flag);
    demand_or_budget = demand.str();
    const auto best = oracle::opt_preemptive(inst, demand, power);
    energy = best.str();
    throughput = demand.is_integer() ? demand.to_long() : 0;
    body << "{\n  \"solver\": \"oracle-preemptive\",\n  \"demand\": \"" << demand.str()
         << "\",\n  \"energy\": \"" << energy << "\"\n}\n";
  } else {
    const Rational budget = required_budget(inst, budget_flag);
    demand_or_budget = budget.str();
    std::vector<Rational> grid;
    if (grid_name == "phi")
      grid = dp_agreeable::build_phi(inst);
    else if (grid_name == "theta" || grid_name.empty())
      grid = dp_equal::build_theta(inst);
    else
      throw ParseError("unknown grid \"" + grid_name + "\" (use theta or phi)");
    throughput = oracle::opt_nonpreemptive(inst, budget, grid, power);
    energy = budget.str();
    body << "{\n  \"solver\": \"oracle-nonpreemptive\",\n  \"budget\": \"" << budget.str()
         << "\",\n  \"max_weight\": " << throughput << "\n}\n";
  }
  if (opts.csv)
    emit(io::csv_row(opts.instance_path, "oracle", inst, demand_or_budget, throughput, energy, 0,
                     watch.ms()),
         opts.out_path);
  else
    emit(body.str(), opts.out_path);
  return kExitOk;
}

int run_verify(const std::string& path) {
  const io::ResultFile result = io::load_result(path);
  const std::vector<std::string> failures = io::verify_result(result);
  if (failures.empty()) {
    std::cout << "ok: " << result.solver << " result verifies\n";
    return kExitOk;
  }
  for (const std::string& f : failures) std::cerr << "verify: " << f << '\n';
  return kExitInternal;
}

std::vector<std::pair<long, long>> parse_items(const std::string& text) {
  // "value:size,value:size,..."
  std::vector<std::pair<long, long>> items;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw ParseError("items expect \"value:size\" pairs");
    items.emplace_back(std::stol(part.substr(0, colon)), std::stol(part.substr(colon + 1)));
  }
  if (items.empty()) throw ParseError("no items given");
  return items;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy/throughput trade-off solvers for speed-scalable machines"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string demand_flag, budget_flag, eps_flag, grid_name;

  const auto add_common = [&](CLI::App* cmd, bool with_instance = true) {
    if (with_instance) cmd->add_option("instance", opts.instance_path, "instance JSON file")->required();
    cmd->add_option("--out", opts.out_path, "write the result here instead of stdout");
    cmd->add_flag("--csv", opts.csv, "emit one CSV summary row");
    cmd->add_flag("--float", opts.use_float, "floating arithmetic (non-integer alpha)");
  };

  auto* pd_energy = app.add_subcommand("pd-energy", "minimize energy under a throughput demand");
  add_common(pd_energy);
  pd_energy->add_option("--demand", demand_flag, "throughput demand W");

  auto* pd_throughput =
      app.add_subcommand("pd-throughput", "maximize throughput under an energy budget");
  add_common(pd_throughput);
  pd_throughput->add_option("--budget", budget_flag, "energy budget E");
  pd_throughput->add_option("--eps", eps_flag, "budget slack (default 1/100)");

  auto* dp_equal_cmd = app.add_subcommand("dp-equal", "exact solver, equal volumes");
  add_common(dp_equal_cmd);
  dp_equal_cmd->add_option("--budget", budget_flag, "energy budget E");

  auto* dp_agreeable_cmd = app.add_subcommand("dp-agreeable", "exact solver, agreeable windows");
  add_common(dp_agreeable_cmd);
  dp_agreeable_cmd->add_option("--budget", budget_flag, "energy budget E");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference solver");
  add_common(oracle_cmd);
  oracle_cmd->add_option("--demand", demand_flag, "preemptive oracle: throughput demand");
  oracle_cmd->add_option("--budget", budget_flag, "non-preemptive oracle: energy budget");
  oracle_cmd->add_option("--grid", grid_name, "non-preemptive grid: theta or phi");

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->require_subcommand(1);
  std::string items_flag;
  long capacity = 0;
  std::uint64_t seed = 1;
  io::GenParams params;
  std::string volume_flag = "1";

  auto* gen_knapsack = gen->add_subcommand("knapsack", "reduction from min-knapsack items");
  gen_knapsack->add_option("--items", items_flag, "\"value:size,...\"")->required();
  gen_knapsack->add_option("--capacity", capacity, "knapsack capacity = energy budget")->required();
  gen_knapsack->add_option("--alpha", params.alpha, "power exponent (default 3)");
  gen_knapsack->add_option("--out", opts.out_path, "output file");

  auto* gen_agreeable = gen->add_subcommand("agreeable", "random agreeable instance");
  auto* gen_equal = gen->add_subcommand("equal-volume", "random equal-volume instance");
  for (CLI::App* g : {gen_agreeable, gen_equal}) {
    g->add_option("--seed", seed, "RNG seed (default 1)");
    g->add_option("--jobs", params.jobs, "job count");
    g->add_option("--machines", params.machines, "machine count");
    g->add_option("--alpha", params.alpha, "power exponent");
    g->add_option("--max-time", params.max_time, "time horizon");
    g->add_option("--max-weight", params.max_weight, "weight bound");
    g->add_option("--out", opts.out_path, "output file");
  }
  gen_agreeable->add_option("--max-volume", params.max_volume, "volume bound");
  gen_equal->add_option("--volume", volume_flag, "the common volume (default 1)");

  auto* verify = app.add_subcommand("verify", "replay a result file's certificates");
  std::string result_path;
  verify->add_option("result", result_path, "result JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (pd_energy->parsed()) return run_pd_energy(opts, demand_flag);
    if (pd_throughput->parsed()) return run_pd_throughput(opts, budget_flag, eps_flag);
    if (dp_equal_cmd->parsed())
      return run_dp(opts, budget_flag, "dp-equal", [](const Instance& inst, const auto& budget,
                                                      const auto& power) {
        return dp_equal::solve_equal(inst, budget, power);
      });
    if (dp_agreeable_cmd->parsed())
      return run_dp(opts, budget_flag, "dp-agreeable", [](const Instance& inst, const auto& budget,
                                                          const auto& power) {
        return dp_agreeable::solve_agreeable(inst, budget, power);
      });
    if (oracle_cmd->parsed()) return run_oracle(opts, demand_flag, budget_flag, grid_name);
    if (gen->parsed()) {
      Instance inst;
      if (gen_knapsack->parsed())
        inst = io::generate_knapsack(parse_items(items_flag), capacity, params.alpha);
      else if (gen_agreeable->parsed())
        inst = io::generate_agreeable(seed, params);
      else {
        params.equal_volume = io::parse_rational(volume_flag);
        inst = io::generate_equal_volume(seed, params);
      }
      emit(io::write_instance(inst), opts.out_path);
      return kExitOk;
    }
    if (verify->parsed()) return run_verify(result_path);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const OracleRefusal& e) {
    std::cerr << "oracle refusal: " << e.what() << '\n';
    return kExitOracleRefusal;
  } catch (const InternalError& e) {
    std::cerr << "internal invariant failure: " << e.what() << '\n';
    return kExitInternal;
  } catch (const ParseError& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const WrongSolverError& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}
