// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dyadic/maximal.hpp"
#include "dyadic/profile.hpp"
#include "dyadic/tree.hpp"

namespace dyadic {

/// Sorts leaf values in decreasing order, each occupying a length equal to its
/// atom measure; equal neighbouring values are merged into one piece.
MonotoneProfile decreasing_rearrangement(const StepFunction& phi);
MonotoneProfile decreasing_rearrangement(std::span<const double> values, std::span<const double> measures);

/// Integral of profile^q over (0, k], evaluated piece by piece in closed form.
double restricted_integral(const MonotoneProfile& profile, double q, double k);

inline constexpr std::size_t kDefaultEnumerationCap = 8;

struct RearrangementSearchReport {
  double best_value = 0.0;
  /// Leaf values of the best placement, in canonical leaf order.
  std::vector<double> best_arrangement;
  /// Value of the decreasing (left-arranged) placement.
  double left_arranged_value = 0.0;
  double hardy_bound = 0.0;
  std::size_t permutations = 0;
  bool holds = true;
};

/// Enumerates every distinct placement of `multiset` on the leaves of `tree`
/// and maximizes the integral of (M_T phi)^q. The bound is the integral over
/// (0,1] of (Hardy g)^q where g is the decreasing profile of the multiset.
RearrangementSearchReport rearrangement_search(const Tree& tree, std::span<const double> multiset, double q,
                                               std::size_t cap = kDefaultEnumerationCap);

struct SymmetrizationReport {
  /// Grid point with the smallest slack Hardy(phi*)(t) - (M phi)*(t).
  Report worst;
  double worst_t = 0.0;
  int points = 0;
  int violations = 0;
  [[nodiscard]] bool holds() const { return violations == 0; }
};

/// Checks (M phi)*(t) <= (1/t) * integral over (0,t] of phi* at t = j/grid, j = 1..grid.
/// In exact mode both sides are compared as dyadic rationals (grid must be a power of two).
SymmetrizationReport symmetrization_check(const MaximalResult& m, int grid = 64, Arithmetic mode = Arithmetic::kFloat);

}  // namespace dyadic
