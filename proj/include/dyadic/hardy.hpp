// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dyadic/profile.hpp"

namespace dyadic {

/// The averaging transform t -> (1/t) * integral of g over (0, t].
///
/// For a step profile it is A_i + B_i / t on each piece, with A_i the piece
/// value and B_i = (mass before the piece) - A_i * t_{i-1} >= 0. For a power
/// profile it is exactly c * g(t).
class HardyTransform {
 public:
  struct Piece {
    double begin;
    double end;
    double A;
    double B;
  };

  explicit HardyTransform(const MonotoneProfile& g);
  explicit HardyTransform(const PowerProfile& g);

  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] bool is_power() const { return power_.has_value(); }
  [[nodiscard]] const std::optional<PowerProfile>& power() const { return power_; }
  /// Step case only.
  [[nodiscard]] std::span<const Piece> pieces() const { return pieces_; }

  /// Integral over (0, k] of (Hardy g)^e; e < 1, e != 0.
  [[nodiscard]] double power_integral(double e, double k = 1.0) const;
  /// Integral over (0, 1] of g(t) * (Hardy g)(t)^e for the profile this transform was built from.
  [[nodiscard]] double weighted_power_integral(double e) const;

 private:
  std::vector<Piece> pieces_;
  std::optional<PowerProfile> power_;
};

HardyTransform hardy_operator(const MonotoneProfile& g);
HardyTransform hardy_operator(const PowerProfile& g);

/// Integral of (A + B/t)^e over [a, b] with 0 <= a < b, A, B >= 0.
double hardy_piece_power_integral(double A, double B, double e, double a, double b);

}  // namespace dyadic
