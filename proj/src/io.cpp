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

#include "speedsched/io.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace speedsched::io {

using nlohmann::json;

Rational parse_rational(const std::string& text) {
  const auto r = Rational::parse(text);
  if (!r.has_value()) throw ParseError("bad rational: \"" + text + "\"");
  return *r;
}

namespace {

Rational rational_from_json(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) {
    const auto r = Rational::parse(v.get<std::string>());
    if (r.has_value()) return *r;
  }
  throw ParseError(where + ": expected an integer or a \"num/den\" string");
}

json rational_to_json(const Rational& r) {
  if (r.is_integer() && r.raw().get_num().fits_slong_p()) return r.to_long();
  return r.str();
}

json instance_to_json(const Instance& instance) {
  json out;
  out["alpha"] = instance.alpha.is_integer() ? json(instance.alpha.to_long())
                                             : json(instance.alpha.to_double());
  out["machines"] = instance.machines;
  json jobs = json::array();
  std::vector<const Job*> by_id(instance.jobs.size());
  for (const Job& j : instance.jobs) by_id[static_cast<std::size_t>(j.id - 1)] = &j;
  for (const Job* j : by_id) {
    json job;
    job["r"] = rational_to_json(j->release);
    job["d"] = rational_to_json(j->deadline);
    job["w"] = j->weight;
    bool identical = true;
    for (const auto& p : j->volume)
      if (!p.has_value() || *p != *j->volume.front()) identical = false;
    if (identical && !j->volume.empty()) {
      job["p"] = rational_to_json(*j->volume.front());
    } else {
      json ps = json::array();
      for (const auto& p : j->volume)
        ps.push_back(p.has_value() ? rational_to_json(*p) : json(nullptr));
      job["p"] = ps;
    }
    jobs.push_back(std::move(job));
  }
  out["jobs"] = std::move(jobs);
  if (instance.demand) out["demand"] = *instance.demand;
  if (instance.budget) out["budget"] = rational_to_json(*instance.budget);
  return out;
}

Instance instance_from_json(const json& in) {
  if (!in.is_object()) throw ParseError("instance file must be a JSON object");
  if (!in.contains("alpha") || !in.contains("machines") || !in.contains("jobs"))
    throw ParseError("instance file needs \"alpha\", \"machines\" and \"jobs\"");
  Rational alpha;
  if (in["alpha"].is_number_integer()) {
    alpha = Rational(static_cast<long>(in["alpha"].get<std::int64_t>()));
  } else if (in["alpha"].is_number_float()) {
    // Non-integer exponents only drive the floating mode; a 9-digit decimal
    // keeps enough precision for it.
    const double a = in["alpha"].get<double>();
    alpha = Rational(static_cast<long>(a * 1e9 + 0.5), 1000000000L);
  } else {
    alpha = rational_from_json(in["alpha"], "alpha");
  }
  const int machines = in["machines"].get<int>();
  if (!in["jobs"].is_array()) throw ParseError("\"jobs\" must be an array");
  std::vector<Job> jobs;
  int id = 0;
  for (const json& job_json : in["jobs"]) {
    Job job;
    job.id = ++id;
    const std::string where = "job " + std::to_string(id);
    if (!job_json.contains("r") || !job_json.contains("d") || !job_json.contains("p"))
      throw ParseError(where + ": needs \"r\", \"d\" and \"p\"");
    job.release = rational_from_json(job_json["r"], where + ".r");
    job.deadline = rational_from_json(job_json["d"], where + ".d");
    job.weight = job_json.contains("w") ? job_json["w"].get<long>() : 1;
    const json& p = job_json["p"];
    if (p.is_array()) {
      if (p.size() != static_cast<std::size_t>(machines))
        throw ParseError(where + ": \"p\" list must have one entry per machine");
      for (const json& entry : p) {
        if (entry.is_null())
          job.volume.emplace_back(std::nullopt);
        else
          job.volume.emplace_back(rational_from_json(entry, where + ".p"));
      }
    } else {
      job.volume.assign(static_cast<std::size_t>(machines),
                        rational_from_json(p, where + ".p"));
    }
    jobs.push_back(std::move(job));
  }
  std::optional<long> demand;
  if (in.contains("demand")) demand = in["demand"].get<long>();
  std::optional<Rational> budget;
  if (in.contains("budget")) budget = rational_from_json(in["budget"], "budget");
  return Instance::create(machines, alpha, std::move(jobs), demand, budget);
}

json plan_to_json(const Instance& instance, const SchedulePlan& plan) {
  json slices = json::array();
  for (std::size_t i = 0; i < plan.machines.size(); ++i)
    for (const Slice& s : plan.machines[i]) {
      json slice;
      slice["machine"] = i + 1;
      slice["job"] = instance.job(s.job).id;
      slice["t0"] = s.t0.str();
      slice["t1"] = s.t1.str();
      slice["speed"] = s.speed.str();
      slices.push_back(std::move(slice));
    }
  return slices;
}

SchedulePlan plan_from_json(const Instance& instance, const json& slices) {
  SchedulePlan plan = SchedulePlan::empty(instance.machines);
  if (!slices.is_array()) throw ParseError("\"plan\" must be an array of slices");
  for (const json& slice : slices) {
    const int machine = slice["machine"].get<int>() - 1;
    if (machine < 0 || machine >= instance.machines)
      throw ParseError("slice references machine " + std::to_string(machine + 1));
    Slice s;
    s.job = instance.position_of_id(slice["job"].get<int>());
    s.t0 = parse_rational(slice["t0"].get<std::string>());
    s.t1 = parse_rational(slice["t1"].get<std::string>());
    s.speed = parse_rational(slice["speed"].get<std::string>());
    plan.machines[static_cast<std::size_t>(machine)].push_back(std::move(s));
  }
  return plan;
}

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::uint64_t next_u64(std::mt19937_64& rng) { return rng(); }

long uniform(std::mt19937_64& rng, long lo, long hi) {  // inclusive
  return lo + static_cast<long>(next_u64(rng) % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    return instance_from_json(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string write_instance(const Instance& instance) {
  return instance_to_json(instance).dump(2) + "\n";
}

std::string instance_digest(const Instance& instance) {
  return fnv1a(instance_to_json(instance).dump());
}

std::string write_result(const ResultFile& result) {
  json out;
  out["solver"] = result.solver;
  out["digest"] = result.digest;
  out["instance"] = instance_to_json(result.instance);
  if (result.demand) out["demand"] = result.demand->str();
  if (result.budget) out["budget"] = result.budget->str();
  if (result.eps) out["eps"] = result.eps->str();
  out["throughput"] = result.throughput;
  out["energy"] = result.energy;
  out["plan"] = plan_to_json(result.instance, result.plan);
  if (result.has_dual) {
    json chain = json::array();
    for (const auto& link : result.dual.chain) {
      json l;
      json set = json::array();
      for (int j = 0; j < result.instance.n(); ++j)
        if ((link.set >> j) & 1U) set.push_back(result.instance.job(j).id);
      l["set"] = std::move(set);
      l["beta"] = link.beta.str();
      chain.push_back(std::move(l));
    }
    json gamma = json::object();
    json price = json::object();
    for (int j = 0; j < result.instance.n(); ++j) {
      const auto jj = static_cast<std::size_t>(j);
      const std::string key = std::to_string(result.instance.job(j).id);
      if (result.dual.is_selected(j)) gamma[key] = result.dual.gamma[jj].str();
      price[key] = result.dual.price[jj].str();
    }
    out["dual"] = {{"chain", std::move(chain)}, {"gamma", std::move(gamma)},
                   {"prices", std::move(price)}};
  }
  out["iterations"] = result.iterations;
  out["ms"] = result.wall_ms;
  out["status"] = result.status;
  return out.dump(2) + "\n";
}

ResultFile parse_result(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("result is not valid JSON: ") + e.what());
  }
  try {
    ResultFile result;
    result.solver = in["solver"].get<std::string>();
    result.digest = in["digest"].get<std::string>();
    result.instance = instance_from_json(in["instance"]);
    if (in.contains("demand")) result.demand = parse_rational(in["demand"].get<std::string>());
    if (in.contains("budget")) result.budget = parse_rational(in["budget"].get<std::string>());
    if (in.contains("eps")) result.eps = parse_rational(in["eps"].get<std::string>());
    result.throughput = in["throughput"].get<long>();
    result.energy = in["energy"].get<std::string>();
    result.plan = plan_from_json(result.instance, in["plan"]);
    if (in.contains("dual")) {
      result.has_dual = true;
      const json& dual = in["dual"];
      const auto nn = static_cast<std::size_t>(result.instance.n());
      result.dual.gamma.assign(nn, Rational(0));
      result.dual.price.assign(nn, Rational(0));
      for (const json& l : dual["chain"]) {
        pd::ChainLink<Rational> link;
        for (const json& id : l["set"]) {
          const int pos = result.instance.position_of_id(id.get<int>());
          link.set |= (1ULL << pos);
          link.set_weight += result.instance.job(pos).weight;
        }
        link.beta = parse_rational(l["beta"].get<std::string>());
        result.dual.chain.push_back(std::move(link));
      }
      for (const auto& [key, value] : dual["gamma"].items()) {
        const int pos = result.instance.position_of_id(std::stoi(key));
        result.dual.gamma[static_cast<std::size_t>(pos)] =
            parse_rational(value.get<std::string>());
        result.dual.selected |= (1ULL << pos);
      }
      for (const auto& [key, value] : dual["prices"].items()) {
        const int pos = result.instance.position_of_id(std::stoi(key));
        result.dual.price[static_cast<std::size_t>(pos)] =
            parse_rational(value.get<std::string>());
      }
    }
    result.iterations = in.value("iterations", 0L);
    result.wall_ms = in.value("ms", 0.0);
    result.status = in.value("status", std::string("ok"));
    return result;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed result: ") + e.what());
  }
}

ResultFile load_result(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_result(buffer.str());
}

std::vector<std::string> verify_result(const ResultFile& result) {
  std::vector<std::string> failures;
  if (instance_digest(result.instance) != result.digest)
    failures.push_back("instance digest mismatch");

  const ValidationReport report = validate_plan(result.instance, result.plan);
  for (const PlanViolation& v : report.violations) failures.push_back(v.detail);
  if (!report.ok()) return failures;

  const bool exact = result.instance.alpha.is_integer();
  if (exact) {
    const PowerModel power = result.instance.power();
    const Rational energy = energy_of(result.instance, result.plan, power);
    if (energy != parse_rational(result.energy))
      failures.push_back("stated energy " + result.energy + " != recomputed " + energy.str());
    if (throughput_of(result.instance, result.plan) != result.throughput)
      failures.push_back("stated throughput does not match the plan");

    if (result.has_dual && result.demand) {
      pd::PdSolution<Rational> sol;
      sol.demand = *result.demand;
      sol.dual = result.dual;
      sol.profiles.resize(static_cast<std::size_t>(result.instance.machines));
      for (int i = 0; i < result.instance.machines; ++i)
        sol.profiles[static_cast<std::size_t>(i)] = result.plan.profile(i);
      const pd::DualReport dual_report = pd::verify_dual(result.instance, sol, power);
      for (const std::string& v : dual_report.violations) failures.push_back(v);
    }
  }
  return failures;
}

Instance generate_knapsack(const std::vector<std::pair<long, long>>& items, long capacity,
                           int alpha) {
  if (items.empty()) throw ParseError("knapsack generator needs at least one item");
  std::vector<Job> jobs;
  Rational prefix = 0;
  for (const auto& [value, size] : items) {
    if (value < 1 || size < 1) throw ParseError("knapsack items need positive value and size");
    Job job;
    job.release = prefix;
    prefix += Rational(size);
    job.deadline = prefix;
    job.weight = value;
    job.volume = {Rational(1)};
    jobs.push_back(std::move(job));
  }
  return Instance::create(1, Rational(alpha), std::move(jobs), std::nullopt, Rational(capacity));
}

Instance generate_agreeable(std::uint64_t seed, const GenParams& params) {
  std::mt19937_64 rng(seed);
  std::vector<Job> jobs;
  long release = 0;
  long deadline = 0;
  for (int j = 0; j < params.jobs; ++j) {
    Job job;
    release += uniform(rng, j == 0 ? 0 : 1, 2);  // strictly increasing after the first
    deadline = std::max(deadline, release) + uniform(rng, 1, std::max<long>(1, params.max_time / 2));
    job.release = Rational(release);
    job.deadline = Rational(deadline);
    job.weight = uniform(rng, 1, params.max_weight);
    job.volume.assign(static_cast<std::size_t>(params.machines),
                      Rational(uniform(rng, 1, params.max_volume)));
    jobs.push_back(std::move(job));
  }
  return Instance::create(params.machines, Rational(params.alpha), std::move(jobs));
}

Instance generate_equal_volume(std::uint64_t seed, const GenParams& params) {
  std::mt19937_64 rng(seed);
  std::vector<Job> jobs;
  for (int j = 0; j < params.jobs; ++j) {
    Job job;
    const long r = uniform(rng, 0, params.max_time - 1);
    job.release = Rational(r);
    job.deadline = Rational(uniform(rng, r + 1, params.max_time));
    job.weight = uniform(rng, 1, params.max_weight);
    job.volume.assign(static_cast<std::size_t>(params.machines), params.equal_volume);
    jobs.push_back(std::move(job));
  }
  return Instance::create(params.machines, Rational(params.alpha), std::move(jobs));
}

std::string csv_header() {
  return "instance,solver,n,m,alpha,demand_or_budget,throughput,energy,iterations,ms";
}

std::string csv_row(const std::string& instance_name, const std::string& solver,
                    const Instance& instance, const std::string& demand_or_budget,
                    long throughput, const std::string& energy, long iterations, double ms) {
  std::ostringstream os;
  os << instance_name << ',' << solver << ',' << instance.n() << ',' << instance.machines << ','
     << instance.alpha.str() << ',' << demand_or_budget << ',' << throughput << ',' << energy
     << ',' << iterations << ',' << ms;
  return os.str();
}

}  // namespace speedsched::io
