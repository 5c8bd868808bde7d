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

#include "speedsched/rational.hpp"

#include <cctype>
#include <ostream>

namespace speedsched {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("rational division by zero");
  q_ /= o.q_;
  return *this;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const auto digits_ok = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (std::isdigit(static_cast<unsigned char>(c)) == 0) return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!digits_ok(num)) return std::nullopt;
  if (slash != std::string_view::npos && !digits_ok(den)) return std::nullopt;
  try {
    mpq_class q(std::string(text), 10);
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return Rational(std::move(q));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

Rational Rational::pow(unsigned e) const {
  mpq_class out;
  mpz_pow_ui(out.get_num_mpz_t(), q_.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), q_.get_den_mpz_t(), e);
  return Rational(std::move(out));  // canonical since base is canonical
}

long Rational::to_long() const {
  if (!is_integer() || !q_.get_num().fits_slong_p())
    throw std::domain_error("rational does not fit a long: " + str());
  return q_.get_num().get_si();
}

std::string Rational::str() const {
  return is_integer() ? q_.get_num().get_str() : q_.get_str();
}

std::size_t Rational::hash() const {
  constexpr unsigned long kMod = (1UL << 61) - 1;
  const std::size_t hn = mpz_fdiv_ui(q_.get_num_mpz_t(), kMod);
  const std::size_t hd = mpz_fdiv_ui(q_.get_den_mpz_t(), kMod);
  std::size_t h = hn * 0x9e3779b97f4a7c15ULL + hd + (sign() < 0 ? 0x517cc1b727220a95ULL : 0);
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 32;
  return h;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace speedsched
