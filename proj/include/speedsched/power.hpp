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

#include <cmath>
#include <stdexcept>

#include "speedsched/rational.hpp"

namespace speedsched {

/// Monomial power function P(z) = z^alpha with integer alpha >= 1.
/// Everything downstream stays exact rational. Conventions: P'(z) =
/// alpha*z^(alpha-1) with z^0 = 1 (so P' = 1 everywhere when alpha = 1),
/// Q(z) = P(z) - z*P'(z) = (1-alpha)*z^alpha, and the steepness constant
/// max_z zP'(z)/P(z) equals alpha.
class PowerModel {
 public:
  using num_type = Rational;

  explicit PowerModel(int alpha) : alpha_(alpha) {
    if (alpha < 1) throw std::invalid_argument("power exponent must be >= 1");
  }

  int alpha() const { return alpha_; }

  Rational P(const Rational& z) const { return z.pow(static_cast<unsigned>(alpha_)); }

  Rational Pprime(const Rational& z) const {
    return Rational(alpha_) * z.pow(static_cast<unsigned>(alpha_ - 1));
  }

  Rational Q(const Rational& z) const { return Rational(1 - alpha_) * P(z); }

  Rational steepness() const { return Rational(alpha_); }

  /// Energy of running `volume` work at constant speed over `duration`:
  /// P(volume/duration) * duration = volume^alpha / duration^(alpha-1).
  Rational energy(const Rational& volume, const Rational& duration) const {
    return P(volume / duration) * duration;
  }

  static Rational to_num(const Rational& r) { return r; }
  static bool le(const Rational& a, const Rational& b) { return a <= b; }
  static constexpr bool is_exact() { return true; }

 private:
  int alpha_;
};

/// Floating-point power function P(z) = z^alpha for non-integer alpha >= 1.
/// Times, volumes and speed profiles remain exact rational; only power,
/// derivative and energy values live in double. Comparisons use a 1e-9
/// relative tolerance.
class RealPowerModel {
 public:
  using num_type = double;

  explicit RealPowerModel(double alpha) : alpha_(alpha) {
    if (alpha < 1.0) throw std::invalid_argument("power exponent must be >= 1");
  }

  double alpha() const { return alpha_; }

  double P(double z) const { return std::pow(z, alpha_); }

  double Pprime(double z) const {
    return alpha_ == 1.0 ? 1.0 : alpha_ * std::pow(z, alpha_ - 1.0);
  }

  double Q(double z) const { return (1.0 - alpha_) * P(z); }

  double steepness() const { return alpha_; }

  double energy(const Rational& volume, const Rational& duration) const {
    const double d = duration.to_double();
    return P(volume.to_double() / d) * d;
  }

  static double to_num(const Rational& r) { return r.to_double(); }
  static double to_num(int v) { return v; }
  static bool le(double a, double b) {
    const double slack = 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
    return a <= b + slack;
  }
  static constexpr bool is_exact() { return false; }

 private:
  double alpha_;
};

}  // namespace speedsched
