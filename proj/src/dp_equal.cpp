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

#include "speedsched/dp_equal.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace speedsched::dp_equal {

namespace {

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

void require_equal_volume(const Instance& instance) {
  if (!instance.equal_volume())
    throw WrongSolverError("this solver handles identical machines with one common volume");
}

constexpr int kMaxMachines = 3;
constexpr int kNone = kMaxMachines;  // promise slot for "no idle promise"

/// Open-addressed map from packed state keys to entry-pool indices. Grid
/// indices stay below 251, so an all-ones key cannot occur and serves as
/// the empty-slot marker.
class SlotMap {
 public:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

  SlotMap() { rehash(1 << 12); }

  std::uint32_t* find(std::uint64_t key) {
    std::size_t at = hash(key) & mask_;
    while (true) {
      if (keys_[at] == key) return &slots_[at];
      if (keys_[at] == kEmpty) return nullptr;
      at = (at + 1) & mask_;
    }
  }

  void insert(std::uint64_t key, std::uint32_t slot) {
    if ((count_ + 1) * 10 >= keys_.size() * 7) rehash(keys_.size() * 2);
    std::size_t at = hash(key) & mask_;
    while (keys_[at] != kEmpty) at = (at + 1) & mask_;
    keys_[at] = key;
    slots_[at] = slot;
    ++count_;
  }

  std::size_t size() const { return count_; }

 private:
  static std::uint64_t hash(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
  }

  void rehash(std::size_t capacity) {
    std::vector<std::uint64_t> old_keys = std::move(keys_);
    std::vector<std::uint32_t> old_slots = std::move(slots_);
    keys_.assign(capacity, kEmpty);
    slots_.assign(capacity, 0);
    mask_ = capacity - 1;
    count_ = 0;
    for (std::size_t i = 0; i < old_keys.size(); ++i)
      if (old_keys[i] != kEmpty) insert(old_keys[i], old_slots[i]);
  }

  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
  std::size_t count_ = 0;
};

}  // namespace

std::vector<Rational> build_theta(const Instance& instance) {
  require_equal_volume(instance);
  const std::vector<Rational> om = omega(instance);
  std::unordered_set<Rational> seen;
  for (std::size_t x = 0; x < om.size(); ++x)
    for (std::size_t y = x; y < om.size(); ++y) {
      const Rational& a = om[x];
      const Rational span = om[y] - a;
      for (int k = 1; k <= instance.n(); ++k)
        for (int l = 0; l <= k; ++l) seen.insert(a + Rational(l) * span / Rational(k));
    }
  std::vector<Rational> theta(seen.begin(), seen.end());
  std::sort(theta.begin(), theta.end());
  return theta;
}

std::vector<Rational> build_lambda(const Instance& instance) {
  require_equal_volume(instance);
  const std::vector<Rational> om = omega(instance);
  const Rational p = *instance.jobs.front().volume.front();
  std::unordered_set<Rational> seen;
  for (std::size_t x = 0; x < om.size(); ++x)
    for (std::size_t y = x + 1; y < om.size(); ++y) {
      const Rational span = om[y] - om[x];
      for (int l = 1; l <= instance.n(); ++l) seen.insert(Rational(l) * p / span);
    }
  std::vector<Rational> speeds(seen.begin(), seen.end());
  std::sort(speeds.begin(), speeds.end());
  return speeds;
}

template <class Power>
struct EqualVolumeDp<Power>::Impl {
  const Instance& instance;
  const Power& power;
  int m;
  int n;
  int grid;  // |theta|
  Rational volume;
  std::vector<Rational> theta;
  std::unordered_map<Rational, int> theta_index;
  std::vector<bool> dur_ok;   // [t0*grid+t1]
  std::vector<K> cost_table;  // [t0*grid+t1], filled where dur_ok
  std::vector<long> avail;    // [k*grid*grid + x*grid + y]: weight of jobs < k, x<=r<y
  std::vector<int> release_idx, deadline_idx;  // per position

  using Coords = std::array<std::uint8_t, kMaxMachines>;

  enum class DecisionKind : std::uint8_t { Base, Skip, Place };
  struct Decision {
    DecisionKind kind = DecisionKind::Base;
    std::uint8_t machine = 0;     // canonical slot of job k's machine
    std::uint8_t t0 = 0, t1 = 0;  // grid indices of job k's run
    Coords u{};                   // split vector, canonical frame
    std::uint16_t weight_left = 0;
  };
  /// One memo entry holds the whole weight ladder of a geometric state:
  /// val[w] = E_k for target w, 0 <= w <= its job-set weight.
  struct Entry {
    std::vector<Ext<K>> val;
    std::vector<Decision> dec;
  };
  SlotMap memo;
  std::deque<Entry> pool;  // stable addresses for returned references

  Impl(const Instance& inst, const Power& pw) : instance(inst), power(pw) {
    require_equal_volume(inst);
    m = inst.machines;
    n = inst.n();
    if (m > kMaxMachines) throw WrongSolverError("equal-volume solver caps out at 3 machines");
    if (n > 0) volume = *inst.jobs.front().volume.front();
    theta = build_theta(inst);
    grid = static_cast<int>(theta.size());
    if (grid > 250) throw WrongSolverError("time grid too large for the desk-scale solver");
    for (int i = 0; i < grid; ++i) theta_index.emplace(theta[static_cast<std::size_t>(i)], i);

    std::unordered_set<Rational> durations;
    if (n > 0)
      for (const Rational& s : build_lambda(inst)) durations.insert(volume / s);
    dur_ok.assign(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid), false);
    cost_table.resize(dur_ok.size());
    std::unordered_map<Rational, K> cost_by_duration;
    for (int x = 0; x < grid; ++x)
      for (int y = x + 1; y < grid; ++y) {
        const Rational dur =
            theta[static_cast<std::size_t>(y)] - theta[static_cast<std::size_t>(x)];
        const auto it = durations.find(dur);
        if (it == durations.end()) continue;
        const std::size_t at = static_cast<std::size_t>(x) * static_cast<std::size_t>(grid) +
                               static_cast<std::size_t>(y);
        dur_ok[at] = true;
        auto cit = cost_by_duration.find(dur);
        if (cit == cost_by_duration.end())
          cit = cost_by_duration.emplace(dur, power.energy(volume, dur)).first;
        cost_table[at] = cit->second;
      }

    release_idx.resize(static_cast<std::size_t>(n));
    deadline_idx.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      release_idx[static_cast<std::size_t>(j)] = index_of(instance.job(j).release);
      deadline_idx[static_cast<std::size_t>(j)] = index_of(instance.job(j).deadline);
    }
    const std::size_t plane = static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid);
    avail.assign(static_cast<std::size_t>(n + 1) * plane, 0);
    for (int k = 1; k <= n; ++k)
      for (int x = 0; x < grid; ++x)
        for (int y = 0; y < grid; ++y) {
          const int r = release_idx[static_cast<std::size_t>(k - 1)];
          avail[static_cast<std::size_t>(k) * plane + static_cast<std::size_t>(x * grid + y)] =
              avail[static_cast<std::size_t>(k - 1) * plane +
                    static_cast<std::size_t>(x * grid + y)] +
              ((x <= r && r < y) ? instance.job(k - 1).weight : 0);
        }
  }

  int index_of(const Rational& t) const {
    const auto it = theta_index.find(t);
    if (it == theta_index.end()) throw ParseError("time " + t.str() + " is not on the grid");
    return it->second;
  }

  long weight_avail(int k, int x, int y) const {
    const std::size_t plane = static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid);
    return avail[static_cast<std::size_t>(k) * plane + static_cast<std::size_t>(x * grid + y)];
  }

  // k <= 62 fits six bits, h two more; e takes the top byte.
  static std::uint64_t make_key(int k, const Coords& a, const Coords& b, int e, int h) {
    return static_cast<std::uint64_t>(a[0]) | (static_cast<std::uint64_t>(a[1]) << 8) |
           (static_cast<std::uint64_t>(a[2]) << 16) | (static_cast<std::uint64_t>(b[0]) << 24) |
           (static_cast<std::uint64_t>(b[1]) << 32) | (static_cast<std::uint64_t>(b[2]) << 40) |
           (static_cast<std::uint64_t>(static_cast<std::uint8_t>(k)) << 48) |
           (static_cast<std::uint64_t>(static_cast<std::uint8_t>(h)) << 54) |
           (static_cast<std::uint64_t>(static_cast<std::uint8_t>(e)) << 56);
  }

  int min_coord(const Coords& v) const {
    int best = v[0];
    for (int i = 1; i < m; ++i) best = std::min(best, static_cast<int>(v[i]));
    return best;
  }

  /// Machines are identical: order them by (a, b, promise flag) so mirrored
  /// states share one memo entry. perm[slot] = caller-frame machine.
  struct Canon {
    Coords a{}, b{};
    int h = kNone;
    std::array<std::uint8_t, kMaxMachines> perm{};
  };

  Canon canonize(const Coords& a, const Coords& b, int h) const {
    Canon c;
    std::array<int, kMaxMachines> order{0, 1, 2};
    const auto rank = [&](int i) {
      return (static_cast<int>(a[static_cast<std::size_t>(i)]) << 10) |
             (static_cast<int>(b[static_cast<std::size_t>(i)]) << 2) | (i == h ? 1 : 0);
    };
    std::sort(order.begin(), order.begin() + m, [&](int x, int y) { return rank(x) < rank(y); });
    for (int slot = 0; slot < m; ++slot) {
      const int i = order[static_cast<std::size_t>(slot)];
      c.a[static_cast<std::size_t>(slot)] = a[static_cast<std::size_t>(i)];
      c.b[static_cast<std::size_t>(slot)] = b[static_cast<std::size_t>(i)];
      c.perm[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(i);
      if (i == h) c.h = slot;
    }
    return c;
  }

  /// Weight ladder of E_k over boxes [theta[a_i], theta[b_i]] with an idle
  /// promise (machine h runs nothing inside (theta[a_h], theta[e])). The
  /// returned reference stays valid (node-based memo). val[w] is indexed up
  /// to the weight available in the state's job set; beyond that E = inf.
  const Entry& table(int k, const Coords& a_in, const Coords& b_in, int e, int h) {
    Coords a = a_in;
    Coords b = b_in;
    if (h != kNone && e <= a[static_cast<std::size_t>(h)]) {
      h = kNone;
      e = 0;
    }
    const Canon canon = canonize(a, b, h);
    const std::uint64_t key = make_key(k, canon.a, canon.b, e, canon.h);
    if (const std::uint32_t* slot = memo.find(key)) return pool[*slot];

    const int a_min = min_coord(canon.a);
    const int b_min = min_coord(canon.b);
    const long cap = weight_avail(k, a_min, b_min);

    Entry entry;
    entry.val.resize(static_cast<std::size_t>(cap) + 1);
    entry.dec.resize(static_cast<std::size_t>(cap) + 1);
    entry.val[0] = Ext<K>(Power::to_num(0));
    entry.dec[0].kind = DecisionKind::Base;
    for (long w = 1; w <= cap; ++w) entry.val[static_cast<std::size_t>(w)] = Ext<K>::inf();

    if (k > 0 && cap > 0) {
      const Entry& prev = table(k - 1, canon.a, canon.b, e, canon.h);
      const long prev_cap = static_cast<long>(prev.val.size()) - 1;
      for (long w = 1; w <= std::min(cap, prev_cap); ++w) {
        if (!prev.val[static_cast<std::size_t>(w)].is_finite()) continue;
        entry.val[static_cast<std::size_t>(w)] = prev.val[static_cast<std::size_t>(w)];
        entry.dec[static_cast<std::size_t>(w)].kind = DecisionKind::Skip;
      }
      const int r = release_idx[static_cast<std::size_t>(k - 1)];
      if (a_min <= r && r < b_min) place_branch(k, canon, e, cap, entry);
    }

    pool.push_back(std::move(entry));
    memo.insert(key, static_cast<std::uint32_t>(pool.size() - 1));
    return pool.back();
  }

  void place_branch(int k, const Canon& canon, int e, long cap, Entry& entry) {
    const Coords& a = canon.a;
    const Coords& b = canon.b;
    const int h = canon.h;
    const long wk = instance.job(k - 1).weight;
    const int a_min = min_coord(a);
    const int b_min = min_coord(b);
    const int r = release_idx[static_cast<std::size_t>(k - 1)];
    const int d = deadline_idx[static_cast<std::size_t>(k - 1)];

    // t0 must fit under every machine's upper bound (the split vector is
    // componentwise at least t0).
    int t0_cap = grid - 1;
    for (int i = 0; i < m; ++i)
      t0_cap = std::min(t0_cap, static_cast<int>(b[static_cast<std::size_t>(i)]));

    // The t1 walk goes from long runs (cheap) to short runs (costly); once
    // every ladder rung has a finite incumbent below the placement cost,
    // nothing further can improve.
    const auto saturated_below = [&](const K& cost) {
      for (long w = 1; w <= cap; ++w) {
        const Ext<K>& v = entry.val[static_cast<std::size_t>(w)];
        if (!v.is_finite() || cost < v.value) return false;
      }
      return true;
    };

    for (int h2 = 0; h2 < m; ++h2) {
      int t0_lo = std::max(static_cast<int>(a[static_cast<std::size_t>(h2)]), r);
      if (h == h2) t0_lo = std::max(t0_lo, e);
      const int t1_cap = std::min(static_cast<int>(b[static_cast<std::size_t>(h2)]), d);

      for (int t0 = t0_lo; t0 <= t0_cap && t0 < t1_cap; ++t0) {
        const long avail_left = weight_avail(k - 1, a_min, t0);
        const long avail_right = weight_avail(k - 1, t0, b_min);
        const std::size_t row = static_cast<std::size_t>(t0) * static_cast<std::size_t>(grid);

        for_each_split(canon, h2, t0, e, [&](const Coords& split) {
          // Child ladders are pulled in only when a rung needs weight from
          // that side; a side carrying 0 contributes energy 0 directly.
          const Entry* left = nullptr;
          const Entry* right = nullptr;
          int right_t1 = -1;  // the t1 whose ladder `right` holds
          static const Ext<K> kZero{Power::to_num(0)};
          for (int t1 = t1_cap; t1 > t0; --t1) {
            if (!dur_ok[row + static_cast<std::size_t>(t1)]) continue;
            const K& cost = cost_table[row + static_cast<std::size_t>(t1)];
            if (saturated_below(cost)) break;
            for (long w = 1; w <= cap; ++w) {
              Ext<K>& incumbent = entry.val[static_cast<std::size_t>(w)];
              const long w_rest = std::max<long>(0, w - wk);
              long left_cap = std::min(w_rest, avail_left);
              if (left != nullptr)
                left_cap = std::min<long>(left_cap, static_cast<long>(left->val.size()) - 1);
              for (long wl = 0; wl <= left_cap; ++wl) {
                const long wr = w_rest - wl;
                if (wr > avail_right) continue;
                if (wl > 0 && left == nullptr) {
                  left = &table(k - 1, a, split, e, h);
                  left_cap = std::min<long>(left_cap, static_cast<long>(left->val.size()) - 1);
                  if (wl > left_cap) break;
                }
                const Ext<K>& lv = wl == 0 ? kZero : left->val[static_cast<std::size_t>(wl)];
                if (!lv.is_finite()) continue;
                if (wr > 0 && right_t1 != t1) {
                  right = &table(k - 1, split, b, t1, h2);
                  right_t1 = t1;
                }
                if (wr > 0 && wr >= static_cast<long>(right->val.size())) continue;
                const Ext<K>& rv = wr == 0 ? kZero : right->val[static_cast<std::size_t>(wr)];
                if (!rv.is_finite()) continue;
                Ext<K> cand(lv.value + cost + rv.value);
                if (cand < incumbent) {
                  incumbent = std::move(cand);
                  Decision& dec = entry.dec[static_cast<std::size_t>(w)];
                  dec.kind = DecisionKind::Place;
                  dec.machine = static_cast<std::uint8_t>(h2);
                  dec.t0 = static_cast<std::uint8_t>(t0);
                  dec.t1 = static_cast<std::uint8_t>(t1);
                  dec.u = split;
                  dec.weight_left = static_cast<std::uint16_t>(wl);
                }
              }
            }
          }
        });
      }
    }
  }

  /// Split vectors u with u_{h2} = t0 and u_i in [max(a_i, t0, promise), b_i]
  /// elsewhere.
  template <class Body>
  void for_each_split(const Canon& canon, int h2, int t0, int e, const Body& body) {
    const Coords& a = canon.a;
    const Coords& b = canon.b;
    const int h = canon.h;
    Coords u{};
    u[static_cast<std::size_t>(h2)] = static_cast<std::uint8_t>(t0);
    std::array<int, kMaxMachines> lo{}, hi{};
    for (int i = 0; i < m; ++i) {
      if (i == h2) continue;
      int l = std::max(static_cast<int>(a[static_cast<std::size_t>(i)]), t0);
      if (i == h) l = std::max(l, e);
      lo[static_cast<std::size_t>(i)] = l;
      hi[static_cast<std::size_t>(i)] = static_cast<int>(b[static_cast<std::size_t>(i)]);
      if (l > hi[static_cast<std::size_t>(i)]) return;  // no admissible split
    }

    std::array<int, 2> others{};
    int other_count = 0;
    for (int i = 0; i < m; ++i)
      if (i != h2) others[static_cast<std::size_t>(other_count++)] = i;
    if (other_count == 0) {
      body(u);
    } else if (other_count == 1) {
      const int i = others[0];
      for (int v = lo[static_cast<std::size_t>(i)]; v <= hi[static_cast<std::size_t>(i)]; ++v) {
        u[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
        body(u);
      }
    } else {
      const int i = others[0], j = others[1];
      for (int v = lo[static_cast<std::size_t>(i)]; v <= hi[static_cast<std::size_t>(i)]; ++v) {
        u[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
        for (int x = lo[static_cast<std::size_t>(j)]; x <= hi[static_cast<std::size_t>(j)]; ++x) {
          u[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(x);
          body(u);
        }
      }
    }
  }

  const Ext<K>& lookup(int k, const Coords& a, const Coords& b, long w, int e, int h) {
    static const Ext<K> zero{Power::to_num(0)};
    static const Ext<K> inf = Ext<K>::inf();
    if (w <= 0) return zero;
    if (k == 0) return inf;
    const Entry& entry = table(k, a, b, e, h);
    if (w >= static_cast<long>(entry.val.size())) return inf;
    return entry.val[static_cast<std::size_t>(w)];
  }

  /// Walks the stored decisions. `coords` are in some caller frame and
  /// `to_global[slot]` maps that frame onto plan machines.
  void reconstruct(int k, Coords a, Coords b, long w, int e, int h,
                   std::array<std::uint8_t, kMaxMachines> to_global, SchedulePlan& plan) {
    while (true) {
      if (w <= 0 || k == 0) return;
      if (h != kNone && e <= a[static_cast<std::size_t>(h)]) {
        h = kNone;
        e = 0;
      }
      const Canon canon = canonize(a, b, h);
      std::array<std::uint8_t, kMaxMachines> global{};
      for (int slot = 0; slot < m; ++slot)
        global[static_cast<std::size_t>(slot)] =
            to_global[canon.perm[static_cast<std::size_t>(slot)]];
      const std::uint32_t* slot = memo.find(make_key(k, canon.a, canon.b, e, canon.h));
      if (slot == nullptr || w >= static_cast<long>(pool[*slot].dec.size()))
        throw InternalError("missing memo entry during plan reconstruction");
      const Decision& dec = pool[*slot].dec[static_cast<std::size_t>(w)];
      if (dec.kind == DecisionKind::Skip) {
        a = canon.a;
        b = canon.b;
        h = canon.h;
        to_global = global;
        --k;
        continue;
      }
      if (dec.kind != DecisionKind::Place)
        throw InternalError("unexpected decision during plan reconstruction");
      const Rational start = theta[dec.t0];
      const Rational end = theta[dec.t1];
      plan.machines[global[dec.machine]].push_back({k - 1, start, end, volume / (end - start)});
      const long wl = dec.weight_left;
      const long wr = std::max<long>(0, w - instance.job(k - 1).weight) - wl;
      reconstruct(k - 1, canon.a, dec.u, wl, e, canon.h, global, plan);
      a = dec.u;
      b = canon.b;
      w = wr;
      e = dec.t1;
      h = dec.machine;
      to_global = global;
      --k;
    }
  }
};

template <class Power>
EqualVolumeDp<Power>::EqualVolumeDp(const Instance& instance, const Power& power)
    : impl_(std::make_unique<Impl>(instance, power)) {}

template <class Power>
EqualVolumeDp<Power>::~EqualVolumeDp() = default;

template <class Power>
EqualVolumeDp<Power>::EqualVolumeDp(EqualVolumeDp&&) noexcept = default;

template <class Power>
EqualVolumeDp<Power>& EqualVolumeDp<Power>::operator=(EqualVolumeDp&&) noexcept = default;

template <class Power>
const std::vector<Rational>& EqualVolumeDp<Power>::theta() const {
  return impl_->theta;
}

template <class Power>
std::uint64_t EqualVolumeDp<Power>::expanded_states() const {
  return impl_->pool.size();
}

template <class Power>
Ext<typename Power::num_type> EqualVolumeDp<Power>::ek(int k, const std::vector<Rational>& a,
                                                       const std::vector<Rational>& b, long w,
                                                       const Rational& e, int promise_machine) {
  if (k < 0 || k > impl_->n) throw ParseError("job prefix out of range");
  if (a.size() != static_cast<std::size_t>(impl_->m) || b.size() != a.size())
    throw ParseError("time vectors must have one entry per machine");
  typename Impl::Coords ai{}, bi{};
  for (int i = 0; i < impl_->m; ++i) {
    if (a[static_cast<std::size_t>(i)] > b[static_cast<std::size_t>(i)])
      throw ParseError("box lower bound exceeds upper bound");
    ai[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(impl_->index_of(a[static_cast<std::size_t>(i)]));
    bi[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(impl_->index_of(b[static_cast<std::size_t>(i)]));
  }
  const int e_idx = impl_->index_of(e);
  if (promise_machine >= impl_->m) throw ParseError("promise machine out of range");
  const int h = promise_machine < 0 ? kNone : promise_machine;
  return impl_->lookup(k, ai, bi, w, e_idx, h);
}

template <class Power>
DpOutcome<typename Power::num_type> EqualVolumeDp<Power>::solve(const K& budget) {
  if (budget < Power::to_num(0)) throw ParseError("negative energy budget");
  const Instance& inst = impl_->instance;
  DpOutcome<K> out;
  out.energy = Power::to_num(0);
  out.plan = SchedulePlan::empty(inst.machines);
  if (inst.n() == 0) return out;

  typename Impl::Coords a{}, b{};
  const int lo = impl_->index_of(inst.min_release());
  const int hi = impl_->index_of(inst.max_deadline());
  for (int i = 0; i < impl_->m; ++i) {
    a[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(lo);
    b[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(hi);
  }

  const auto& top = impl_->table(inst.n(), a, b, lo, kNone);
  long best_w = 0;
  Ext<K> best = Ext<K>(Power::to_num(0));
  for (long w = static_cast<long>(top.val.size()) - 1; w >= 1; --w) {
    if (top.val[static_cast<std::size_t>(w)].le(budget)) {
      best_w = w;
      best = top.val[static_cast<std::size_t>(w)];
      break;
    }
  }
  out.states = impl_->pool.size();
  if (best_w == 0) return out;

  out.weight = best_w;
  std::array<std::uint8_t, kMaxMachines> identity{0, 1, 2};
  impl_->reconstruct(inst.n(), a, b, best_w, lo, kNone, identity, out.plan);
  for (auto& machine : out.plan.machines)
    std::sort(machine.begin(), machine.end(),
              [](const Slice& x, const Slice& y) { return x.t0 < y.t0; });
  out.energy = best.value;
  const ValidationReport report = validate_plan(inst, out.plan);
  if (!report.ok()) throw InternalError("reconstructed plan invalid: " + report.summary());
  if constexpr (Power::is_exact()) {
    if (energy_of(inst, out.plan, impl_->power) != best.value)
      throw InternalError("reconstructed plan energy differs from the table value");
  }
  if (throughput_of(inst, out.plan) < best_w)
    throw InternalError("reconstructed plan misses the weight target");
  return out;
}

template <class Power>
DpOutcome<typename Power::num_type> solve_equal(const Instance& instance,
                                                const typename Power::num_type& budget,
                                                const Power& power) {
  return EqualVolumeDp<Power>(instance, power).solve(budget);
}

template class EqualVolumeDp<PowerModel>;
template class EqualVolumeDp<RealPowerModel>;
template DpOutcome<Rational> solve_equal(const Instance&, const Rational&, const PowerModel&);
template DpOutcome<double> solve_equal(const Instance&, const double&, const RealPowerModel&);

}  // namespace speedsched::dp_equal
