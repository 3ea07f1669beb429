// SPDX-License-Identifier: MIT
#include "dyadic/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dyadic/quadrature.hpp"

namespace dyadic {

HardyTransform::HardyTransform(const MonotoneProfile& g) {
  const auto t = g.breakpoints();
  const auto v = g.values();
  double mass_before = 0.0;
  pieces_.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    // Rounding can push B a hair below zero when neighbouring values are equal.
    const double B = std::max(0.0, mass_before - v[i] * t[i]);
    pieces_.push_back({t[i], t[i + 1], v[i], i == 0 ? 0.0 : B});
    mass_before = g.prefix_integral(t[i + 1]);
  }
}

HardyTransform::HardyTransform(const PowerProfile& g) : power_(g) {}

double HardyTransform::operator()(double t) const {
  if (!(t > 0.0 && t <= 1.0)) throw std::out_of_range("Hardy transform argument must lie in (0,1]");
  if (power_) return power_->c() * (*power_)(t);
  const auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                                   [](const Piece& p, double x) { return p.end < x; });
  return it->A + it->B / t;
}

double hardy_piece_power_integral(double A, double B, double e, double a, double b) {
  if (!(b > a)) return 0.0;
  if (B == 0.0) {
    if (A == 0.0) return e > 0.0 ? 0.0 : INFINITY;
    return std::pow(A, e) * (b - a);
  }
  if (e >= 1.0) throw std::domain_error("exponent must be below 1");
  if (A == 0.0) return std::pow(B, e) * (std::pow(b, 1.0 - e) - std::pow(a, 1.0 - e)) / (1.0 - e);
  if (a == 0.0) throw std::domain_error("a piece with B > 0 cannot start at 0");
  return quad::smooth([&](double t) { return std::pow(A + B / t, e); }, a, b);
}

double HardyTransform::power_integral(double e, double k) const {
  if (k <= 0.0) return 0.0;
  k = std::min(k, 1.0);
  if (power_) return std::pow(power_->c(), e) * power_->power_integral(e, k);
  double sum = 0.0;
  for (const Piece& p : pieces_) {
    if (p.begin >= k) break;
    sum += hardy_piece_power_integral(p.A, p.B, e, p.begin, std::min(p.end, k));
  }
  return sum;
}

double HardyTransform::weighted_power_integral(double e) const {
  if (power_) return std::pow(power_->c(), e) * power_->power_integral(1.0 + e);
  double sum = 0.0;
  for (const Piece& p : pieces_) {
    if (p.A == 0.0) continue;  // g vanishes on this piece and on every later one
    sum += p.A * hardy_piece_power_integral(p.A, p.B, e, p.begin, p.end);
  }
  return sum;
}

HardyTransform hardy_operator(const MonotoneProfile& g) { return HardyTransform(g); }
HardyTransform hardy_operator(const PowerProfile& g) { return HardyTransform(g); }

}  // namespace dyadic
