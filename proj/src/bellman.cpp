// SPDX-License-Identifier: MIT
#include "dyadic/bellman.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "dyadic/hardy.hpp"

namespace dyadic {

namespace {

struct Moments {
  long double f = 0.0L;
  long double h = 0.0L;
  long double I = 0.0L;
  long double IV = 0.0L;
};

// All four integrals of the upper-bound argument. In exact mode the mass and the
// maximal values are exact dyadic rationals; only the powers are rounded.
Moments moments(double q, const MaximalResult& m, Arithmetic mode) {
  const Tree& t = m.input.tree();
  const bool exact = mode == Arithmetic::kExact;
  if (exact && !m.exact) throw std::invalid_argument("exact mode needs an exactly evaluated maximal function");
  const long double lq = q;
  Moments out;
  DyadicRational exact_f;
  for (std::size_t i = 0; i < m.input.size(); ++i) {
    const long double phi = m.input.value(i);
    const long double mv = exact ? (*m.exact)[i].to_long_double() : static_cast<long double>(m.maximal.value(i));
    const long double mu = t.leaf_measure(i);
    if (exact) {
      exact_f += DyadicRational::from_double(m.input.value(i)) * *t.exact_measure(t.leaf_node(i));
    } else {
      out.f += phi * mu;
    }
    if (phi > 0.0L) {
      out.h += std::pow(phi, lq) * mu;
      out.IV += phi * std::pow(mv, lq - 1.0L) * mu;
    }
    if (mv > 0.0L) out.I += std::pow(mv, lq) * mu;
  }
  if (exact) out.f = exact_f.to_long_double();
  return out;
}

double tolerance_for(Arithmetic mode) {
  return mode == Arithmetic::kExact ? kExactPowerTolerance : kFloatTolerance;
}

}  // namespace

void validate_q(double q) {
  if (!(q >= kMinQ && q <= kMaxQ)) {
    throw std::invalid_argument("q must lie in [" + std::to_string(kMinQ) + ", " + std::to_string(kMaxQ) + "]");
  }
}

BellmanPoint BellmanPoint::make(double q, double f, double h) {
  validate_q(q);
  if (!(f > 0.0) || !std::isfinite(f)) throw std::invalid_argument("f must be positive and finite");
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("h must be positive and finite");
  const double fq = std::pow(f, q);
  if (h > fq * (1.0 + 1e-12)) throw std::invalid_argument("inadmissible point: h exceeds f^q");
  return {q, f, h};
}

double BellmanPoint::z() const { return std::max(1.0, std::pow(f, q) / h); }

double hq_eval(double q, double z) {
  validate_q(q);
  if (!(z >= 1.0)) throw std::domain_error("H_q is evaluated on [1, inf)");
  return (1.0 - q) * std::pow(z, q) + q * std::pow(z, q - 1.0);
}

double hq_inverse(double q, double z) {
  validate_q(q);
  if (!(z >= 1.0)) {
    if (z >= 1.0 - kClampWindow) {
      std::clog << "warning: H_q inverse argument " << z << " below 1 by rounding; clamped to 1\n";
      z = 1.0;
    } else {
      throw std::domain_error("H_q inverse needs z >= 1");
    }
  }
  if (!std::isfinite(z)) throw std::domain_error("H_q inverse needs a finite argument");
  if (z == 1.0) return 1.0;
  // H_q is increasing on [1, inf) with H_q(1) = 1 < z; grow the upper end until it brackets z.
  const auto F = [&](double c) { return hq_eval(q, c) - z; };
  double hi = std::pow(z, 1.0 / q) + 1.0;
  double fhi = F(hi);
  while (fhi < 0.0) {
    hi *= 2.0;
    fhi = F(hi);
  }
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(F, 1.0, hi, 1.0 - z, fhi,
                                                        boost::math::tools::eps_tolerance<double>(50), iterations);
  if (iterations >= 200) throw std::runtime_error("H_q inversion did not converge");
  const double c = 0.5 * (a + b);
  if (!(b - a <= kRootTolerance * c)) throw std::runtime_error("H_q inversion missed its tolerance");
  return c;
}

double omega_q(double q, double z) { return std::pow(hq_inverse(q, z), q); }

double bellman_value(const BellmanPoint& p) { return p.h * omega_q(p.q, p.z()); }

PowerProfile extremal_profile(const BellmanPoint& p) { return {p.f, hq_inverse(p.q, p.z())}; }

UpperBoundReport upper_bound_check(double q, const MaximalResult& m, Arithmetic mode) {
  validate_q(q);
  UpperBoundReport r;
  if (m.input.is_zero()) return r;  // every integral vanishes
  const Moments mo = moments(q, m, mode);
  r.f = static_cast<double>(mo.f);
  r.h = static_cast<double>(mo.h);
  r.I = static_cast<double>(mo.I);
  r.bound = bellman_value(BellmanPoint::make(q, r.f, r.h));
  r.holds = holds_with_tolerance(r.I, r.bound, tolerance_for(mode));
  return r;
}

UpperBoundReport upper_bound_check(double q, const StepFunction& phi, Arithmetic mode) {
  return upper_bound_check(q, maximal_operator(phi, mode), mode);
}

ChainReport intermediate_chain_check(double q, const MaximalResult& m, Arithmetic mode) {
  validate_q(q);
  if (m.input.is_zero()) throw std::invalid_argument("the chain check needs a function that is not identically 0");
  const Moments mo = moments(q, m, mode);
  const long double lq = q;
  const long double covering_rhs = std::pow(mo.f, lq) / (1.0L - lq) - lq / (1.0L - lq) * mo.IV;
  const long double holder_lhs = std::pow(mo.h, 1.0L / lq) * std::pow(mo.I, 1.0L - 1.0L / lq);
  ChainReport r;
  r.f = static_cast<double>(mo.f);
  r.h = static_cast<double>(mo.h);
  r.I = static_cast<double>(mo.I);
  r.IV = static_cast<double>(mo.IV);
  const double tol = tolerance_for(mode);
  // Both right sides are differences/products of quantities of size ~f^q; scale the tolerance by f^q.
  const double scale = static_cast<double>(std::pow(mo.f, lq) / (1.0L - lq));
  r.covering = {r.I, static_cast<double>(covering_rhs), r.I <= covering_rhs + tol * scale};
  r.holder = {static_cast<double>(holder_lhs), r.IV, holds_with_tolerance(static_cast<double>(holder_lhs), r.IV, tol)};
  return r;
}

ChainReport intermediate_chain_check(double q, const StepFunction& phi, Arithmetic mode) {
  return intermediate_chain_check(q, maximal_operator(phi, mode), mode);
}

HardyIdentityReport hardy_identity_check(const MonotoneProfile& g, double q) {
  validate_q(q);
  const HardyTransform H(g);
  const double f = g.integral();
  HardyIdentityReport r;
  r.lhs = H.power_integral(q);
  r.rhs = std::pow(f, q) / (1.0 - q) - q / (1.0 - q) * H.weighted_power_integral(q - 1.0);
  r.abs_error = std::abs(r.lhs - r.rhs);
  r.holds = r.abs_error <= kHardyIdentityTolerance;
  return r;
}

HardyIdentityReport hardy_identity_check(const PowerProfile& g, double q) {
  validate_q(q);
  const HardyTransform H(g);
  HardyIdentityReport r;
  r.lhs = H.power_integral(q);
  r.rhs = std::pow(g.integral(), q) / (1.0 - q) - q / (1.0 - q) * H.weighted_power_integral(q - 1.0);
  r.abs_error = std::abs(r.lhs - r.rhs);
  r.holds = r.abs_error <= kHardyIdentityTolerance;
  return r;
}

Report holder_specialization_check(double q, const StepFunction& phi1, const StepFunction& phi2) {
  validate_q(q);
  if (phi1.size() != phi2.size()) {
    throw std::invalid_argument("both functions must live on the same tree");
  }
  const Tree& t = phi1.tree();
  const long double lq = q;
  const long double p = lq / (1.0L - lq);
  long double lhs = 0.0L;
  long double f1 = 0.0L;
  long double f2 = 0.0L;
  for (std::size_t i = 0; i < phi1.size(); ++i) {
    const long double a = phi1.value(i);
    const long double b = phi2.value(i);
    const long double mu = t.leaf_measure(i);
    if (a > 0.0L && b > 0.0L) lhs += std::pow(a * b, lq) * mu;
    f1 += a * mu;
    if (b > 0.0L) f2 += std::pow(b, p) * mu;
  }
  const long double rhs = std::pow(f1, lq) * std::pow(f2, 1.0L - lq);
  const double l = static_cast<double>(lhs);
  const double r = static_cast<double>(rhs);
  return {l, r, holds_with_tolerance(l, r, kFloatTolerance)};
}

}  // namespace dyadic
