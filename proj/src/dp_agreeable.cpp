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

#include "speedsched/dp_agreeable.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

namespace speedsched::dp_agreeable {

namespace {

constexpr int kMaxMachines = 3;

void require_agreeable(const Instance& instance) {
  if (!instance.identical_machines())
    throw WrongSolverError("this solver handles identical machines only");
  if (!instance.agreeable())
    throw WrongSolverError("instance is not agreeable (release and deadline orders differ)");
  for (const Job& j : instance.jobs)
    if (!j.volume.front()->is_integer())
      throw WrongSolverError("agreeable solver expects integer volumes");
}

std::vector<Rational> omega(const Instance& instance) {
  std::vector<Rational> out;
  for (const Job& j : instance.jobs) {
    out.push_back(j.release);
    out.push_back(j.deadline);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

long total_volume(const Instance& instance) {
  long v = 0;
  for (const Job& j : instance.jobs) v += j.volume.front()->to_long();
  return v;
}

struct Key {
  std::uint64_t lo = 0, hi = 0;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    auto mix = [](std::uint64_t x) {
      x ^= x >> 33;
      x *= 0xff51afd7ed558ccdULL;
      x ^= x >> 33;
      x *= 0xc4ceb9fe1a85ec53ULL;
      x ^= x >> 33;
      return x;
    };
    return mix(k.lo ^ mix(k.hi));
  }
};

}  // namespace

std::vector<Rational> build_phi(const Instance& instance) {
  require_agreeable(instance);
  const std::vector<Rational> om = omega(instance);
  const long volume = total_volume(instance);
  std::unordered_set<Rational> seen;
  for (std::size_t x = 0; x < om.size(); ++x)
    for (std::size_t y = x; y < om.size(); ++y) {
      const Rational& a = om[x];
      const Rational span = om[y] - a;
      for (long k = 1; k <= volume; ++k)
        for (long l = 0; l <= k; ++l) seen.insert(a + Rational(l) * span / Rational(k));
    }
  std::vector<Rational> phi(seen.begin(), seen.end());
  std::sort(phi.begin(), phi.end());
  return phi;
}

std::vector<Rational> build_delta(const Instance& instance) {
  require_agreeable(instance);
  const std::vector<Rational> om = omega(instance);
  const long volume = total_volume(instance);
  std::unordered_set<Rational> seen;
  for (std::size_t x = 0; x < om.size(); ++x)
    for (std::size_t y = x + 1; y < om.size(); ++y) {
      const Rational span = om[y] - om[x];
      for (long i = 1; i <= volume; ++i) seen.insert(Rational(i) / span);
    }
  std::vector<Rational> speeds(seen.begin(), seen.end());
  std::sort(speeds.begin(), speeds.end());
  return speeds;
}

std::vector<std::pair<std::vector<Rational>, int>> prec(const Instance& instance, int k,
                                                        const std::vector<Rational>& b,
                                                        const Rational& speed) {
  require_agreeable(instance);
  if (k < 1 || k > instance.n()) throw ParseError("job index out of range");
  if (b.size() != static_cast<std::size_t>(instance.machines))
    throw ParseError("time vector must have one entry per machine");
  if (speed.sign() <= 0) throw ParseError("speed must be positive");
  const std::vector<Rational> phi = build_phi(instance);
  const Job& job = instance.job(k - 1);
  const Rational duration = *job.volume.front() / speed;

  std::vector<std::pair<std::vector<Rational>, int>> out;
  for (int h = 0; h < instance.machines; ++h) {
    const Rational end = min(b[static_cast<std::size_t>(h)], job.deadline);
    const Rational start = end - duration;
    if (start < job.release) continue;
    if (!std::binary_search(phi.begin(), phi.end(), start)) continue;
    std::vector<Rational> a = b;
    a[static_cast<std::size_t>(h)] = start;
    out.emplace_back(std::move(a), h);
  }
  return out;
}

template <class Power>
struct AgreeableDp<Power>::Impl {
  const Instance& instance;
  const Power& power;
  int m;
  int n;
  std::vector<Rational> phi;
  std::unordered_map<Rational, int> phi_index;
  std::vector<Rational> delta;

  enum class DecisionKind : std::uint8_t { Base, Skip, Place };
  struct Decision {
    DecisionKind kind = DecisionKind::Base;
    std::uint8_t machine = 0;
    std::uint16_t start = 0, end = 0;  // grid indices of job k's run
  };
  struct Entry {
    Ext<K> value;
    Decision decision;
  };
  std::unordered_map<Key, Entry, KeyHash> memo;

  // Per job and end index: admissible (start index, energy) placements.
  std::vector<std::unordered_map<int, std::vector<std::pair<int, K>>>> placements;

  Impl(const Instance& inst, const Power& pw) : instance(inst), power(pw) {
    require_agreeable(inst);
    m = inst.machines;
    n = inst.n();
    if (m > kMaxMachines) throw WrongSolverError("agreeable solver caps out at 3 machines");
    phi = build_phi(inst);
    if (phi.size() > 60000) throw WrongSolverError("time grid too large for the desk-scale solver");
    for (std::size_t i = 0; i < phi.size(); ++i) phi_index.emplace(phi[i], static_cast<int>(i));
    delta = n > 0 ? build_delta(inst) : std::vector<Rational>{};
    placements.resize(static_cast<std::size_t>(n));
  }

  int index_of(const Rational& t) const {
    const auto it = phi_index.find(t);
    if (it == phi_index.end()) throw ParseError("time " + t.str() + " is not on the grid");
    return it->second;
  }

  const std::vector<std::pair<int, K>>& placements_for(int pos, int end_idx) {
    auto& by_end = placements[static_cast<std::size_t>(pos)];
    if (const auto it = by_end.find(end_idx); it != by_end.end()) return it->second;
    const Job& job = instance.job(pos);
    const Rational& volume = *job.volume.front();
    const Rational& end = phi[static_cast<std::size_t>(end_idx)];
    std::vector<std::pair<int, K>> list;
    for (const Rational& s : delta) {
      const Rational start = end - volume / s;
      if (start < job.release) continue;  // delta ascending: later speeds stay valid
      const auto it = phi_index.find(start);
      if (it == phi_index.end()) continue;
      list.emplace_back(it->second,
                        power.P(Power::to_num(s)) / Power::to_num(s) * Power::to_num(volume));
    }
    return by_end.emplace(end_idx, std::move(list)).first->second;
  }

  long weight_avail(int k, const Rational& hi) const {
    long w = 0;
    for (int j = 0; j < k; ++j)
      if (instance.job(j).release < hi) w += instance.job(j).weight;
    return w;
  }

  using Coords = std::array<std::uint16_t, kMaxMachines>;

  Key make_key(int k, const Coords& b, long w) const {
    Key key;
    key.lo = static_cast<std::uint64_t>(b[0]) | (static_cast<std::uint64_t>(b[1]) << 16) |
             (static_cast<std::uint64_t>(b[2]) << 32) |
             (static_cast<std::uint64_t>(static_cast<std::uint8_t>(k)) << 48);
    key.hi = static_cast<std::uint64_t>(w);
    return key;
  }

  int min_coord(const Coords& v) const {
    int best = v[0];
    for (int i = 1; i < m; ++i) best = std::min(best, static_cast<int>(v[i]));
    return best;
  }

  Ext<K> value(int k, const Coords& b, long w) {
    if (w <= 0) return Ext<K>(Power::to_num(0));
    if (k == 0) return Ext<K>::inf();
    const Rational& b_min = phi[static_cast<std::size_t>(min_coord(b))];
    if (weight_avail(k, b_min) < w) return Ext<K>::inf();

    const Key key = make_key(k, b, w);
    if (const auto it = memo.find(key); it != memo.end()) return it->second.value;

    Entry entry;
    entry.value = value(k - 1, b, w);
    entry.decision = {DecisionKind::Skip, 0, 0, 0};

    const Job& job = instance.job(k - 1);
    if (job.release < b_min) {
      // Job k covers w_k of the target; a heavier job still only needs >= 0 more.
      const long w_rest = std::max<long>(0, w - job.weight);
      for (int h = 0; h < m; ++h) {
        const Rational end =
            min(phi[static_cast<std::size_t>(b[static_cast<std::size_t>(h)])], job.deadline);
        if (end <= job.release) continue;
        const int end_idx = index_of(end);
        for (const auto& [start_idx, cost] : placements_for(k - 1, end_idx)) {
          if (entry.value.is_finite() && entry.value.value < cost) continue;
          Coords b2 = b;
          b2[static_cast<std::size_t>(h)] = static_cast<std::uint16_t>(start_idx);
          const Ext<K> rest = value(k - 1, b2, w_rest);
          if (!rest.is_finite()) continue;
          const Ext<K> cand(rest.value + cost);
          if (cand < entry.value) {
            entry.value = cand;
            entry.decision.kind = DecisionKind::Place;
            entry.decision.machine = static_cast<std::uint8_t>(h);
            entry.decision.start = static_cast<std::uint16_t>(start_idx);
            entry.decision.end = static_cast<std::uint16_t>(end_idx);
          }
        }
      }
    }

    return memo.emplace(key, std::move(entry)).first->second.value;
  }

  void reconstruct(int k, Coords b, long w, SchedulePlan& plan) {
    while (w > 0 && k > 0) {
      const auto it = memo.find(make_key(k, b, w));
      if (it == memo.end()) throw InternalError("missing memo entry during plan reconstruction");
      const Decision& dec = it->second.decision;
      if (dec.kind == DecisionKind::Skip) {
        --k;
        continue;
      }
      if (dec.kind != DecisionKind::Place)
        throw InternalError("unexpected decision during plan reconstruction");
      const Rational& start = phi[dec.start];
      const Rational& end = phi[dec.end];
      const Rational& volume = *instance.job(k - 1).volume.front();
      plan.machines[dec.machine].push_back({k - 1, start, end, volume / (end - start)});
      b[dec.machine] = dec.start;
      w -= instance.job(k - 1).weight;
      --k;
    }
  }
};

template <class Power>
AgreeableDp<Power>::AgreeableDp(const Instance& instance, const Power& power)
    : impl_(std::make_unique<Impl>(instance, power)) {}

template <class Power>
AgreeableDp<Power>::~AgreeableDp() = default;

template <class Power>
AgreeableDp<Power>::AgreeableDp(AgreeableDp&&) noexcept = default;

template <class Power>
AgreeableDp<Power>& AgreeableDp<Power>::operator=(AgreeableDp&&) noexcept = default;

template <class Power>
const std::vector<Rational>& AgreeableDp<Power>::phi() const {
  return impl_->phi;
}

template <class Power>
std::uint64_t AgreeableDp<Power>::expanded_states() const {
  return impl_->memo.size();
}

template <class Power>
Ext<typename Power::num_type> AgreeableDp<Power>::fk(int k, const std::vector<Rational>& b,
                                                     long w) {
  if (k < 0 || k > impl_->n) throw ParseError("job prefix out of range");
  if (b.size() != static_cast<std::size_t>(impl_->m))
    throw ParseError("time vector must have one entry per machine");
  typename Impl::Coords bi{};
  for (int i = 0; i < impl_->m; ++i)
    bi[static_cast<std::size_t>(i)] =
        static_cast<std::uint16_t>(impl_->index_of(b[static_cast<std::size_t>(i)]));
  return impl_->value(k, bi, w);
}

template <class Power>
DpOutcome<typename Power::num_type> AgreeableDp<Power>::solve(const K& budget) {
  if (budget < Power::to_num(0)) throw ParseError("negative energy budget");
  const Instance& inst = impl_->instance;
  DpOutcome<K> out;
  out.energy = Power::to_num(0);
  out.plan = SchedulePlan::empty(inst.machines);
  if (inst.n() == 0) return out;

  // F is non-increasing as any b_i grows, so the box maximum sits at the
  // all-(d_max) corner.
  typename Impl::Coords top{};
  const int hi = impl_->index_of(inst.max_deadline());
  for (int i = 0; i < impl_->m; ++i) top[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(hi);

  for (long w = inst.total_weight(); w >= 1; --w) {
    const Ext<K> e = impl_->value(inst.n(), top, w);
    if (e.le(budget)) {
      out.weight = w;
      impl_->reconstruct(inst.n(), top, w, out.plan);
      for (auto& machine : out.plan.machines)
        std::sort(machine.begin(), machine.end(),
                  [](const Slice& x, const Slice& y) { return x.t0 < y.t0; });
      out.energy = e.value;
      out.states = impl_->memo.size();
      const ValidationReport report = validate_plan(inst, out.plan);
      if (!report.ok()) throw InternalError("reconstructed plan invalid: " + report.summary());
      if constexpr (Power::is_exact()) {
        if (energy_of(inst, out.plan, impl_->power) != e.value)
          throw InternalError("reconstructed plan energy differs from the table value");
      }
      if (throughput_of(inst, out.plan) < w)
        throw InternalError("reconstructed plan misses the weight target");
      return out;
    }
  }
  out.states = impl_->memo.size();
  return out;
}

template <class Power>
DpOutcome<typename Power::num_type> solve_agreeable(const Instance& instance,
                                                    const typename Power::num_type& budget,
                                                    const Power& power) {
  return AgreeableDp<Power>(instance, power).solve(budget);
}

template class AgreeableDp<PowerModel>;
template class AgreeableDp<RealPowerModel>;
template DpOutcome<Rational> solve_agreeable(const Instance&, const Rational&, const PowerModel&);
template DpOutcome<double> solve_agreeable(const Instance&, const double&, const RealPowerModel&);

}  // namespace speedsched::dp_agreeable
