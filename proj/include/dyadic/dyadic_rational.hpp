// SPDX-License-Identifier: MIT
#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace dyadic {

/// Exact number of the form mantissa * 2^exponent.
///
/// Every finite double is such a number, and dyadic rationals are closed under
/// addition, multiplication and halving, which is all the maximal operator on a
/// dyadic tree needs. Operations throw std::overflow_error instead of rounding
/// when the 128-bit mantissa would overflow.
class DyadicRational {
 public:
  constexpr DyadicRational() = default;
  DyadicRational(std::int64_t integer);  // NOLINT(google-explicit-constructor)

  static DyadicRational from_double(double value);
  /// 2^exponent.
  static DyadicRational power_of_two(int exponent);

  [[nodiscard]] double to_double() const;
  [[nodiscard]] long double to_long_double() const;
  [[nodiscard]] bool is_zero() const { return mantissa_ == 0; }
  [[nodiscard]] int sign() const { return (mantissa_ > 0) - (mantissa_ < 0); }

  /// Rendered as "p" or "p/2^k" with p and 2^k in decimal, e.g. "3/8".
  [[nodiscard]] std::string to_string() const;
  /// Parses the to_string() format; the denominator must be a power of two.
  static DyadicRational parse(const std::string& text);

  /// Multiplies by 2^k exactly.
  [[nodiscard]] DyadicRational ldexp(int k) const;

  friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b);
  DyadicRational operator-() const;
  DyadicRational& operator+=(const DyadicRational& other) { return *this = *this + other; }

  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);
  friend bool operator==(const DyadicRational& a, const DyadicRational& b) = default;

 private:
  DyadicRational(__int128 mantissa, int exponent);
  void normalize();

  __int128 mantissa_ = 0;
  int exponent_ = 0;
};

}  // namespace dyadic
