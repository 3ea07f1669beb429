// SPDX-License-Identifier: MIT
#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <stdexcept>

namespace dyadic::quad {

/// Absolute tolerance targeted on every piece.
inline constexpr double kPieceTolerance = 1e-10;

/// Adaptive Gauss-Kronrod for integrands smooth on [a, b].
template <class F>
double smooth(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-13, &error);
  if (!(error <= kPieceTolerance + 1e-12 * std::abs(value))) {
    throw std::runtime_error("quadrature did not reach tolerance on a smooth piece");
  }
  return value;
}

/// Tanh-sinh for integrands with algebraic endpoint behaviour such as |x - x0|^q.
template <class F>
double endpoint_singular(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(f, a, b, 1e-12, &error, &l1);
  // On a finite interval Boost scales the value and L1 by (b - a)/2 but reports
  // the error estimate of the unscaled rule; bring it to the same scale.
  error *= 0.5 * (b - a);
  if (!(error <= kPieceTolerance + 1e-10 * std::abs(l1))) {
    throw std::runtime_error("quadrature did not reach tolerance on a singular piece");
  }
  return value;
}

}  // namespace dyadic::quad
