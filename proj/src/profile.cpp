// SPDX-License-Identifier: MIT
#include "dyadic/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dyadic {

MonotoneProfile::MonotoneProfile(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty() || breakpoints_.size() != values_.size() + 1) {
    throw std::invalid_argument("profile needs N values and N+1 breakpoints");
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw std::invalid_argument("profile breakpoints must run from 0 to 1");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1])) throw std::invalid_argument("profile breakpoints must increase");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) throw std::invalid_argument("profile values must be >= 0");
    if (i > 0 && values_[i] > values_[i - 1]) throw std::invalid_argument("profile values must be non-increasing");
  }
  prefix_.assign(values_.size() + 1, 0.0);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    prefix_[i + 1] = prefix_[i] + values_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
  }
}

MonotoneProfile MonotoneProfile::constant(double value) { return {{0.0, 1.0}, {value}}; }

std::size_t MonotoneProfile::piece_index(double t) const {
  if (!(t > 0.0 && t <= 1.0)) throw std::out_of_range("profile argument must lie in (0,1]");
  // First breakpoint >= t closes the piece containing t.
  const auto it = std::lower_bound(breakpoints_.begin() + 1, breakpoints_.end(), t);
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

double MonotoneProfile::operator()(double t) const { return values_[piece_index(t)]; }

double MonotoneProfile::prefix_integral(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return prefix_.back();
  const std::size_t i = piece_index(t);
  return prefix_[i] + values_[i] * (t - breakpoints_[i]);
}

std::string MonotoneProfile::to_csv() const {
  std::string out = "breakpoint,value\n";
  char buf[80];
  for (std::size_t i = 0; i < values_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", breakpoints_[i + 1], values_[i]);
    out += buf;
  }
  return out;
}

PowerProfile::PowerProfile(double mass, double c) : mass_(mass), c_(c) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("power profile mass must be positive");
  if (!(c >= 1.0) || !std::isfinite(c)) throw std::invalid_argument("power profile exponent parameter c must be >= 1");
}

double PowerProfile::operator()(double t) const {
  if (!(t > 0.0 && t <= 1.0)) throw std::out_of_range("profile argument must lie in (0,1]");
  return K() * std::pow(t, -1.0 + 1.0 / c_);
}

double PowerProfile::prefix_integral(double t) const {
  if (t <= 0.0) return 0.0;
  return t >= 1.0 ? mass_ : mass_ * std::pow(t, 1.0 / c_);
}

double PowerProfile::power_integral(double e, double k) const {
  const double alpha = e * (1.0 - 1.0 / c_);
  if (!(alpha < 1.0)) throw std::domain_error("power integral diverges at 0");
  if (k <= 0.0) return 0.0;
  return std::pow(K(), e) * std::pow(std::min(k, 1.0), 1.0 - alpha) / (1.0 - alpha);
}

}  // namespace dyadic
