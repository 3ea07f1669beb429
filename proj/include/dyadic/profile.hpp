// SPDX-License-Identifier: MIT
#pragma once

#include <span>
#include <string>
#include <vector>

namespace dyadic {

/// Non-increasing step function on (0,1], left-continuous:
/// value_i on (t_{i-1}, t_i] with 0 = t_0 < t_1 < ... < t_N = 1.
class MonotoneProfile {
 public:
  MonotoneProfile(std::vector<double> breakpoints, std::vector<double> values);
  static MonotoneProfile constant(double value);

  [[nodiscard]] std::span<const double> breakpoints() const { return breakpoints_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::size_t pieces() const { return values_.size(); }

  /// Value at t in (0,1].
  [[nodiscard]] double operator()(double t) const;
  /// Index of the piece (t_{i-1}, t_i] containing t.
  [[nodiscard]] std::size_t piece_index(double t) const;
  /// Integral of the profile over (0, t].
  [[nodiscard]] double prefix_integral(double t) const;
  [[nodiscard]] double integral() const { return prefix_integral(1.0); }

  /// CSV lines "breakpoint,value" for the right end of every piece.
  [[nodiscard]] std::string to_csv() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  std::vector<double> prefix_;  // integral over (0, t_i]
};

/// g(t) = K * t^(-1 + 1/c) on (0,1] with K = mass / c.
///
/// Stored through its total mass so that the integral of g is returned exactly.
class PowerProfile {
 public:
  PowerProfile(double mass, double c);

  [[nodiscard]] double mass() const { return mass_; }
  [[nodiscard]] double c() const { return c_; }
  [[nodiscard]] double K() const { return mass_ / c_; }

  [[nodiscard]] double operator()(double t) const;
  /// Integral over (0, t]: K c t^(1/c).
  [[nodiscard]] double prefix_integral(double t) const;
  [[nodiscard]] double integral() const { return mass_; }
  /// Integral of g^e over (0, k], e*(1 - 1/c) < 1.
  [[nodiscard]] double power_integral(double e, double k = 1.0) const;

 private:
  double mass_;
  double c_;
};

}  // namespace dyadic
