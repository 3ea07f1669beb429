// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "dyadic/dyadic_rational.hpp"

using dyadic::DyadicRational;

TEST_CASE("rendering and parsing use decimal numerator over a power of two") {
  CHECK(DyadicRational::from_double(0.375).to_string() == "3/8");
  CHECK(DyadicRational::from_double(-0.375).to_string() == "-3/8");
  CHECK(DyadicRational::from_double(12.0).to_string() == "12");
  CHECK(DyadicRational::from_double(0.0).to_string() == "0");
  CHECK(DyadicRational::power_of_two(-3).to_string() == "1/8");
  CHECK(DyadicRational::parse("3/8") == DyadicRational::from_double(0.375));
  CHECK(DyadicRational::parse("-5/4").to_double() == -1.25);
  CHECK(DyadicRational::parse("7") == DyadicRational(7));
  CHECK_THROWS_AS(DyadicRational::parse("1/3"), std::invalid_argument);
  CHECK_THROWS_AS(DyadicRational::parse("abc"), std::invalid_argument);
}

TEST_CASE("every finite double converts exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    const auto r = DyadicRational::from_double(x);
    CHECK(r.to_double() == x);
    CHECK(DyadicRational::parse(r.to_string()) == r);
  }
  CHECK(DyadicRational::from_double(std::numeric_limits<double>::denorm_min()).to_double() ==
        std::numeric_limits<double>::denorm_min());
  CHECK_THROWS(DyadicRational::from_double(std::nan("")));
}

TEST_CASE("arithmetic is exact where doubles round") {
  // 1 + 2^-60 is not a double, but it is a dyadic rational.
  const DyadicRational tiny = DyadicRational::power_of_two(-60);
  const DyadicRational sum = DyadicRational(1) + tiny;
  CHECK(sum != DyadicRational(1));
  CHECK(sum - DyadicRational(1) == tiny);
  CHECK(sum > DyadicRational(1));
  CHECK((DyadicRational::from_double(0.1) * DyadicRational(10)) != DyadicRational(1));
  CHECK(DyadicRational::from_double(0.75).ldexp(2) == DyadicRational(3));
  CHECK(-DyadicRational(3) < DyadicRational(0));
  DyadicRational acc;
  for (int i = 0; i < 8; ++i) acc += DyadicRational::power_of_two(-3);
  CHECK(acc == DyadicRational(1));
}

TEST_CASE("ordering matches the real ordering") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    const auto ra = DyadicRational::from_double(a);
    const auto rb = DyadicRational::from_double(b);
    CHECK((ra < rb) == (a < b));
    CHECK((ra == rb) == (a == b));
  }
}

TEST_CASE("overflow throws instead of rounding") {
  const DyadicRational big = DyadicRational::from_double(std::ldexp(1.0, 100)) + DyadicRational(1);
  CHECK_THROWS_AS(big * big, std::overflow_error);
}
