// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dyadic/dyadic_rational.hpp"
#include "dyadic/tree.hpp"

namespace dyadic {

/// Float mode compares with a relative tolerance; exact mode evaluates every
/// rational quantity as a DyadicRational (dyadic trees only).
enum class Arithmetic { kFloat, kExact };

inline constexpr double kFloatTolerance = 1e-12;
/// Relative tolerance for quantities involving x^q in exact mode: the rational
/// inputs are exact, the powers are evaluated in long double.
inline constexpr double kExactPowerTolerance = 1e-14;

/// Level sets {M > lambda} (strict) or {M >= lambda}.
enum class LevelSet { kStrict, kNonStrict };

struct MaximalResult {
  StepFunction input;
  StepFunction maximal;
  /// Level of the ancestor attaining the maximum average; ties go to the shallowest.
  std::vector<int> argmax_level;
  /// Exact leaf values of M_T phi, present when computed in exact mode.
  std::optional<std::vector<DyadicRational>> exact;
};

/// Generic record for an inequality lhs <= rhs.
struct Report {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;

  [[nodiscard]] double slack() const { return rhs - lhs; }
  [[nodiscard]] double ratio() const { return rhs == 0.0 ? (lhs == 0.0 ? 1.0 : 0.0) : lhs / rhs; }
  /// "{lhs=..., rhs=..., ratio=..., holds=true}" with 17 significant digits.
  [[nodiscard]] std::string to_string() const;
};

/// M_T phi on every leaf: the largest average of phi over the ancestors of the leaf.
MaximalResult maximal_operator(const StepFunction& phi, Arithmetic mode = Arithmetic::kFloat);

/// lhs = mu({M phi > lambda}), rhs = (1/lambda) * integral of phi over that set.
Report weak_type_check(const MaximalResult& m, double lambda, LevelSet kind = LevelSet::kStrict,
                       Arithmetic mode = Arithmetic::kFloat);
Report weak_type_check(const StepFunction& phi, double lambda, LevelSet kind = LevelSet::kStrict,
                       Arithmetic mode = Arithmetic::kFloat);

/// lhs = integral over E of (M phi)^q, rhs = mu(E)^(1-q) (integral phi)^q / (1-q).
Report kolmogorov_check(double q, const MaximalResult& m, std::span<const std::size_t> leaves,
                        Arithmetic mode = Arithmetic::kFloat);
Report kolmogorov_check(double q, const StepFunction& phi, std::span<const std::size_t> leaves,
                        Arithmetic mode = Arithmetic::kFloat);

/// Lossless rendering with 17 significant digits.
std::string format17(double v);

/// lhs <= rhs up to a relative tolerance (zero tolerance passes `tol = 0`).
bool holds_with_tolerance(double lhs, double rhs, double tol);

}  // namespace dyadic
