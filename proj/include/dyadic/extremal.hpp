// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dyadic/bellman.hpp"
#include "dyadic/maximal.hpp"
#include "dyadic/profile.hpp"
#include "dyadic/tree.hpp"

namespace dyadic {

/// How a near-extremal step function is laid out on the dyadic tree.
enum class SpikeRule {
  /// Recursive chains on which M_T phi = c * phi holds exactly away from the
  /// truncated constant blocks (default; converges toward the eigenfunction relation).
  kEigenChain,
  /// Cells [2^-(k+1), 2^-k) carrying the cell averages of the power profile
  /// (monotone in leaf order; M_T phi is the prefix average).
  kPrefixCells,
};

std::string to_string(SpikeRule rule);
SpikeRule parse_spike_rule(const std::string& text);

/// Deepest tree handled by the closed-form class lists (materialization is
/// further limited by kMaxDyadicDepth).
inline constexpr int kMaxSpikeDepth = 40;

/// "Converged" thresholds used by the depth sweep at its final depth.
inline constexpr double kConvergedRatio = 0.98;
inline constexpr double kConvergedResidualFraction = 0.05;

struct SpikeSequenceParams {
  BellmanPoint point;
  int depth = 2;
  SpikeRule rule = SpikeRule::kEigenChain;
};

/// A set of leaves sharing the same phi and M_T phi values, with its total measure.
struct SpikeClass {
  double phi = 0.0;
  double maximal = 0.0;
  double measure = 0.0;
};

/// Closed-form description of phi_m and M_T phi_m, without materializing 2^m leaves.
std::vector<SpikeClass> spike_classes(const SpikeSequenceParams& params);

/// The step function phi_m on the depth-m dyadic tree.
StepFunction build_spike_sequence(const SpikeSequenceParams& params);

struct ResidualReport {
  int depth = 0;
  double I = 0.0;       // integral of (M_T phi_m)^q
  double B = 0.0;       // B_q(f, h) at the target point
  double ratio = 0.0;   // I / B
  double h_m = 0.0;     // integral of phi_m^q
  double B_m = 0.0;     // B_q(f, h_m)
  double ratio_m = 0.0; // I / B_m
  double eigen_residual = 0.0;
  double rearranged_residual = 0.0;
  /// Whether I and the eigen residual were recomputed through maximal_operator.
  bool cross_checked = false;
};

/// CSV header and rows for a depth sweep.
std::string residual_csv_header();
std::string to_csv_row(const ResidualReport& r);

inline constexpr int kDefaultVerifyDepth = 20;

/// Builds phi_m for each depth (strictly increasing) and measures how close it
/// comes to the Bellman value and to the eigenfunction relation M_T phi = c phi.
/// Up to `verify_depth` the closed forms are cross-checked against the generic
/// maximal operator; a disagreement throws std::logic_error.
std::vector<ResidualReport> convergence_study(const BellmanPoint& point, std::span<const int> depths,
                                              SpikeRule rule = SpikeRule::kEigenChain,
                                              int verify_depth = kDefaultVerifyDepth);

/// Sum over leaves of |M_T phi - c phi|^q times the atom measure.
double eigenfunction_residual(double q, const StepFunction& phi, double c);
double eigenfunction_residual(double q, const MaximalResult& m, double c);

/// Integral over (0,1] of |(M_T phi)*(t) - (Hardy g)(t)|^q. For a power profile
/// Hardy g = c g, so this is also the distance to c g.
double rearranged_residual(double q, const StepFunction& phi, const PowerProfile& g);
double rearranged_residual(double q, const StepFunction& phi, const MonotoneProfile& g);
/// Same integral with (M_T phi)* already rearranged.
double rearranged_residual(double q, const MonotoneProfile& maximal_star, const PowerProfile& g);
double rearranged_residual(double q, const MonotoneProfile& maximal_star, const MonotoneProfile& g);

/// t^q s^(1-q) + t'^q s'^(1-q) <= (t+t')^q (s+s')^(1-q).
struct HolderSplitReport {
  Report report;
  /// t s' == s t' evaluated exactly.
  bool proportional = false;
  /// lhs and rhs agree to rounding.
  bool equality = false;
  /// The inequality holds and equality is reported exactly when the inputs are proportional.
  [[nodiscard]] bool consistent() const { return report.holds && equality == proportional; }
};

inline constexpr double kSplitEqualityTolerance = 1e-14;

HolderSplitReport holder_split_check(double t, double t_prime, double s, double s_prime, double q);

/// 0 < x^q - y^q <= (x - y)^q for x > y > 0.
Report elementary_power_check(double x, double y, double q);

/// For w_n >= w on a leaf subset: integral of (w_n - w)^q against
/// (1/q)^q [integral of (w_n^q - w^q)]^q [integral of w_n^q]^(1-q).
Report power_gap_check(double q, const StepFunction& w_n, const StepFunction& w, std::span<const std::size_t> leaves);

struct SmallKRow {
  double k = 0.0;
  /// Largest restricted integral of (M_T phi_m)* over (0,k] across the family.
  double sup_value = 0.0;
  int argmax_depth = 0;
  /// Integral over (0,k] of (Hardy g)^q for the generating power profile.
  double hardy_value = 0.0;
  /// k^(1-q) f^q / (1-q), the Kolmogorov bound for any set of measure k.
  double kolmogorov_bound = 0.0;
};

struct SmallKReport {
  std::vector<SmallKRow> rows;
  double threshold = 0.0;
  /// Every row respects the Kolmogorov bound.
  bool bounded = true;
  /// sup_value does not increase as k decreases.
  bool monotone = true;
  /// The last (smallest) k is below the threshold.
  bool below_threshold = true;
  [[nodiscard]] bool holds() const { return bounded && monotone && below_threshold; }
};

/// k values must be in (0,1] and strictly decreasing.
SmallKReport small_k_limit_check(const BellmanPoint& point, std::span<const int> depths,
                                 std::span<const double> k_values, double threshold,
                                 SpikeRule rule = SpikeRule::kEigenChain);

}  // namespace dyadic
