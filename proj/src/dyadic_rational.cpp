// SPDX-License-Identifier: MIT
#include "dyadic/dyadic_rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dyadic {

namespace {

constexpr int kMantissaBits = 126;

int bit_width(__int128 v) {
  unsigned __int128 u = v < 0 ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  int bits = 0;
  while (u != 0) {
    u >>= 1;
    ++bits;
  }
  return bits;
}

__int128 checked_shift_left(__int128 v, int shift) {
  if (v == 0) return 0;
  if (shift < 0 || bit_width(v) + shift > kMantissaBits) {
    throw std::overflow_error("DyadicRational: mantissa overflow");
  }
  return v * (static_cast<__int128>(1) << shift);
}

std::string u128_to_string(unsigned __int128 u) {
  if (u == 0) return "0";
  std::string out;
  while (u != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

unsigned __int128 parse_u128(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("DyadicRational: empty number");
  unsigned __int128 v = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("DyadicRational: bad digit in '" + text + "'");
    unsigned __int128 next = v * 10 + static_cast<unsigned>(ch - '0');
    if (next / 10 != v) throw std::overflow_error("DyadicRational: number too large");
    v = next;
  }
  return v;
}

}  // namespace

DyadicRational::DyadicRational(std::int64_t integer) : mantissa_(integer), exponent_(0) { normalize(); }

DyadicRational::DyadicRational(__int128 mantissa, int exponent) : mantissa_(mantissa), exponent_(exponent) {
  normalize();
}

void DyadicRational::normalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  while ((mantissa_ & 1) == 0) {
    mantissa_ /= 2;
    ++exponent_;
  }
}

DyadicRational DyadicRational::from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("DyadicRational: non-finite value");
  if (value == 0.0) return {};
  int exp = 0;
  const double frac = std::frexp(value, &exp);  // value = frac * 2^exp, 0.5 <= |frac| < 1
  const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  return {static_cast<__int128>(mant), exp - 53};
}

DyadicRational DyadicRational::power_of_two(int exponent) { return {static_cast<__int128>(1), exponent}; }

long double DyadicRational::to_long_double() const {
  return std::ldexp(static_cast<long double>(mantissa_), exponent_);
}

double DyadicRational::to_double() const { return static_cast<double>(to_long_double()); }

DyadicRational DyadicRational::ldexp(int k) const {
  if (mantissa_ == 0) return {};
  return {mantissa_, exponent_ + k};
}

DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
  if (a.mantissa_ == 0) return b;
  if (b.mantissa_ == 0) return a;
  const int e = std::min(a.exponent_, b.exponent_);
  const __int128 ma = checked_shift_left(a.mantissa_, a.exponent_ - e);
  const __int128 mb = checked_shift_left(b.mantissa_, b.exponent_ - e);
  return {ma + mb, e};
}

DyadicRational DyadicRational::operator-() const { return {-mantissa_, exponent_}; }

DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) { return a + (-b); }

DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
  if (a.mantissa_ == 0 || b.mantissa_ == 0) return {};
  if (bit_width(a.mantissa_) + bit_width(b.mantissa_) > kMantissaBits) {
    throw std::overflow_error("DyadicRational: product overflow");
  }
  return {a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_};
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  // Same sign: compare magnitudes through the difference, which is exact.
  const DyadicRational d = a - b;
  return d.sign() <=> 0;
}

std::string DyadicRational::to_string() const {
  const bool negative = mantissa_ < 0;
  const auto mag = static_cast<unsigned __int128>(negative ? -mantissa_ : mantissa_);
  std::string out = negative ? "-" : "";
  if (exponent_ >= 0) {
    return out + u128_to_string(mag << exponent_);
  }
  if (-exponent_ > 127) throw std::overflow_error("DyadicRational: denominator too large to render");
  return out + u128_to_string(mag) + "/" + u128_to_string(static_cast<unsigned __int128>(1) << -exponent_);
}

DyadicRational DyadicRational::parse(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.erase(body.begin());
  }
  const auto slash = body.find('/');
  const unsigned __int128 num = parse_u128(body.substr(0, slash));
  int exponent = 0;
  if (slash != std::string::npos) {
    unsigned __int128 den = parse_u128(body.substr(slash + 1));
    if (den == 0 || (den & (den - 1)) != 0) {
      throw std::invalid_argument("DyadicRational: denominator of '" + text + "' is not a power of two");
    }
    while (den > 1) {
      den >>= 1;
      --exponent;
    }
  }
  if (bit_width(static_cast<__int128>(num)) > kMantissaBits) throw std::overflow_error("DyadicRational: numerator too large");
  const auto mant = static_cast<__int128>(num);
  return {negative ? -mant : mant, exponent};
}

}  // namespace dyadic
