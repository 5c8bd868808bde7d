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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace speedsched {

/// Exact rational scalar backed by GMP. Always canonical: lowest terms,
/// positive denominator. All solver arithmetic in exact mode runs on this
/// type, so structural equality is value equality.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(int n) : q_(n) {}                // NOLINT: implicit for literals
  Rational(long n) : q_(static_cast<signed long>(n)) {}  // NOLINT
  Rational(long num, long den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "7", "-3", "7/4", "-501/100". Whitespace is not accepted.
  static std::optional<Rational> parse(std::string_view text);

  const mpq_class& raw() const { return q_; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }

  int sign() const { return mpq_sgn(q_.get_mpq_t()); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  /// z^e for integer e >= 0.
  Rational pow(unsigned e) const;

  double to_double() const { return q_.get_d(); }

  /// Truncating conversion; requires an integer value that fits in long.
  long to_long() const;

  /// "num/den" for non-integers, plain "num" otherwise.
  std::string str() const;

  std::size_t hash() const;

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class q_;
};

inline Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace speedsched

template <>
struct std::hash<speedsched::Rational> {
  std::size_t operator()(const speedsched::Rational& r) const { return r.hash(); }
};
