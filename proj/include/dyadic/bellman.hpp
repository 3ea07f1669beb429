// SPDX-License-Identifier: MIT
#pragma once

#include "dyadic/maximal.hpp"
#include "dyadic/profile.hpp"
#include "dyadic/tree.hpp"

namespace dyadic {

inline constexpr double kMinQ = 0.01;
inline constexpr double kMaxQ = 0.99;
/// Relative tolerance of the H_q inversion.
inline constexpr double kRootTolerance = 1e-12;
/// Arguments of omega_q in [1 - kClampWindow, 1) are treated as rounding noise and clamped to 1.
inline constexpr double kClampWindow = 1e-12;

/// Throws std::invalid_argument unless q lies in [kMinQ, kMaxQ].
void validate_q(double q);

/// Admissible triple (q, f, h): f > 0 and 0 < h <= f^q (up to 1e-12 relative rounding).
struct BellmanPoint {
  double q = 0.5;
  double f = 1.0;
  double h = 1.0;

  static BellmanPoint make(double q, double f, double h);
  /// f^q / h, floored at 1 so that rounding at the boundary h = f^q stays admissible.
  [[nodiscard]] double z() const;
};

/// H_q(z) = (1 - q) z^q + q z^(q-1) for z >= 1.
double hq_eval(double q, double z);
/// The unique c >= 1 with H_q(c) = z.
double hq_inverse(double q, double z);
/// omega_q(z) = [H_q^{-1}(z)]^q.
double omega_q(double q, double z);

/// B_q(f, h) = h * omega_q(f^q / h).
double bellman_value(const BellmanPoint& point);

/// The power profile g(t) = K t^(-1 + 1/c) with c = H_q^{-1}(f^q/h) and K = f/c:
/// integral f, q-integral h and Hardy transform c * g.
PowerProfile extremal_profile(const BellmanPoint& point);

struct UpperBoundReport {
  double f = 0.0;
  double h = 0.0;
  double I = 0.0;
  double bound = 0.0;
  bool holds = true;
  [[nodiscard]] double slack() const { return bound - I; }
  [[nodiscard]] Report report() const { return {I, bound, holds}; }
};

/// I = integral of (M_T phi)^q against B_q(f, h) with f, h the moments of phi.
UpperBoundReport upper_bound_check(double q, const StepFunction& phi, Arithmetic mode = Arithmetic::kFloat);
UpperBoundReport upper_bound_check(double q, const MaximalResult& m, Arithmetic mode = Arithmetic::kFloat);

/// The two inequalities the upper-bound proof chains together:
///   I <= f^q/(1-q) - q/(1-q) * IV   and   IV >= h^(1/q) * I^(1 - 1/q),
/// where IV is the integral of phi * (M_T phi)^(q-1).
struct ChainReport {
  double f = 0.0;
  double h = 0.0;
  double I = 0.0;
  double IV = 0.0;
  Report covering;  // lhs = I, rhs = f^q/(1-q) - q/(1-q) IV
  Report holder;    // lhs = h^(1/q) I^(1-1/q), rhs = IV
  [[nodiscard]] bool holds() const { return covering.holds && holder.holds; }
};

ChainReport intermediate_chain_check(double q, const StepFunction& phi, Arithmetic mode = Arithmetic::kFloat);
ChainReport intermediate_chain_check(double q, const MaximalResult& m, Arithmetic mode = Arithmetic::kFloat);

/// Integral of (Hardy g)^q against f^q/(1-q) - q/(1-q) * integral of g (Hardy g)^(q-1).
struct HardyIdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_error = 0.0;
  bool holds = true;
};

inline constexpr double kHardyIdentityTolerance = 1e-8;

HardyIdentityReport hardy_identity_check(const MonotoneProfile& g, double q);
HardyIdentityReport hardy_identity_check(const PowerProfile& g, double q);

/// Integral of (phi1 phi2)^q against (integral phi1)^q (integral phi2^(q/(1-q)))^(1-q).
Report holder_specialization_check(double q, const StepFunction& phi1, const StepFunction& phi2);

}  // namespace dyadic
