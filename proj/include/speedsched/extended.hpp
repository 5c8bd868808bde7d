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

#include <string>

namespace speedsched {

/// A value from K ∪ {+∞}; infinity encodes "no schedule exists".
template <class K>
struct Ext {
  bool infinite = true;
  K value{};

  Ext() = default;
  Ext(K v) : infinite(false), value(std::move(v)) {}  // NOLINT
  static Ext inf() { return Ext(); }

  bool is_finite() const { return !infinite; }

  friend Ext operator+(const Ext& a, const Ext& b) {
    if (a.infinite || b.infinite) return inf();
    return Ext(a.value + b.value);
  }
  friend bool operator<(const Ext& a, const Ext& b) {
    if (b.infinite) return !a.infinite;
    if (a.infinite) return false;
    return a.value < b.value;
  }
  friend bool operator==(const Ext& a, const Ext& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  bool le(const K& bound) const { return !infinite && !(bound < value); }

  std::string str() const { return infinite ? "inf" : to_str(value); }

 private:
  static std::string to_str(const K& v) {
    if constexpr (requires { v.str(); })
      return v.str();
    else
      return std::to_string(v);
  }
};

template <class K>
Ext<K> min(const Ext<K>& a, const Ext<K>& b) {
  return b < a ? b : a;
}

}  // namespace speedsched
