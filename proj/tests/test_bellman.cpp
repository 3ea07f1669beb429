// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "dyadic/bellman.hpp"
#include "dyadic/hardy.hpp"
#include "dyadic/rearrange.hpp"
#include "oracles.hpp"

using namespace dyadic;

TEST_CASE("hq_eval: spec examples") {
  for (double q : {0.01, 0.3, 0.5, 0.99}) CHECK(hq_eval(q, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hq_eval(0.5, 4.0) == 1.25);
  CHECK(hq_eval(0.5, 2.0) == doctest::Approx((std::sqrt(2.0) + 1.0 / std::sqrt(2.0)) / 2.0).epsilon(1e-15));
  CHECK(hq_eval(0.5, 2.0) == doctest::Approx(1.0606602).epsilon(1e-7));
  CHECK_THROWS_AS(hq_eval(0.5, 0.99), std::domain_error);
}

TEST_CASE("hq_eval is strictly increasing on [1, inf)") {
  for (double q = 0.05; q < 0.96; q += 0.05) {
    double previous = hq_eval(q, 1.0);
    for (double z = 1.01; z < 200.0; z *= 1.05) {
      const double v = hq_eval(q, z);
      CHECK(v > previous);
      previous = v;
    }
  }
}

TEST_CASE("omega_q: spec examples against the closed form for q = 1/2") {
  CHECK(omega_q(0.5, 1.0) == 1.0);
  CHECK(omega_q(0.3, 1.0) == 1.0);
  CHECK(omega_q(0.5, 1.25) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(omega_q(0.5, hq_eval(0.5, 2.0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  for (double z = 1.0; z < 500.0; z = z * 1.3 + 0.01) {
    CHECK(omega_q(0.5, z) == doctest::Approx(oracle::omega_half(z)).epsilon(1e-11));
  }
}

TEST_CASE("omega_q inverts H_q, is >= 1 and non-decreasing") {
  for (double q = 0.05; q < 0.96; q += 0.05) {
    double previous = 1.0;
    for (double z = 1.0; z <= 1e4; z = z * 1.2 + 0.001) {
      const double w = omega_q(q, z);
      CHECK(w >= 1.0);
      CHECK(w >= previous);
      CHECK(hq_eval(q, std::pow(w, 1.0 / q)) == doctest::Approx(z).epsilon(1e-10));
      previous = w;
    }
  }
}

TEST_CASE("omega_q: arguments just below 1 are clamped, others rejected") {
  CHECK(omega_q(0.5, 1.0 - 1e-14) == 1.0);
  CHECK_THROWS_AS(omega_q(0.5, 0.999), std::domain_error);
  CHECK_THROWS_AS(omega_q(0.5, INFINITY), std::domain_error);
  CHECK_THROWS_AS(omega_q(0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(omega_q(0.995, 2.0), std::invalid_argument);
}

TEST_CASE("BellmanPoint admissibility") {
  CHECK_NOTHROW(BellmanPoint::make(0.5, 4.0, 2.0));
  CHECK_NOTHROW(BellmanPoint::make(0.5, 4.0, 2.0 * (1 + 1e-13)));
  CHECK_THROWS_AS(BellmanPoint::make(0.5, 4.0, 2.1), std::invalid_argument);
  CHECK_THROWS_AS(BellmanPoint::make(0.5, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(BellmanPoint::make(0.5, 1.0, 0.0), std::invalid_argument);
  CHECK(BellmanPoint::make(0.5, 4.0, 2.0 * (1 + 1e-13)).z() == 1.0);
}

TEST_CASE("bellman_value: spec examples") {
  CHECK(bellman_value(BellmanPoint::make(0.5, 4.0, 2.0)) == 2.0);
  CHECK(bellman_value(BellmanPoint::make(0.3, 2.0, std::pow(2.0, 0.3))) == std::pow(2.0, 0.3));
  CHECK(bellman_value(BellmanPoint::make(0.5, 1.0, 0.8)) == doctest::Approx(1.6).epsilon(1e-12));
  // c = 2: h = 1 / H_{1/2}(2) and B = c^q h = sqrt(2) h = 4/3.
  const double h = 1.0 / hq_eval(0.5, 2.0);
  CHECK(h == doctest::Approx(0.9428090).epsilon(1e-7));
  CHECK(bellman_value(BellmanPoint::make(0.5, 1.0, h)) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("extremal_profile: spec examples") {
  PowerProfile g = extremal_profile(BellmanPoint::make(0.5, 3.0, std::sqrt(3.0)));
  CHECK(g.c() == 1.0);
  CHECK(g.K() == 3.0);
  CHECK(g(0.3) == 3.0);

  g = extremal_profile(BellmanPoint::make(0.5, 1.0, 0.8));
  CHECK(g.c() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(g.K() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(g.integral() == 1.0);
  CHECK(g.power_integral(0.5) == doctest::Approx(0.5 / 0.625).epsilon(1e-12));

  g = extremal_profile(BellmanPoint::make(0.5, 1.0, 1.0 / hq_eval(0.5, 2.0)));
  CHECK(g.c() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(g.K() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hardy_operator(g).power_integral(0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("extremal profile moments and the sharpness identity at random points") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double q = 0.05 + 0.9 * u(rng);
    const double f = 0.1 + 10.0 * u(rng);
    const double h = std::pow(f, q) * (0.02 + 0.98 * u(rng));
    const BellmanPoint p = BellmanPoint::make(q, f, h);
    const PowerProfile g = extremal_profile(p);
    CHECK(g.integral() == f);
    CHECK(g.power_integral(q) == doctest::Approx(h).epsilon(1e-10));
    // Independent check of the moment: K^q / ((1-q) + q/c).
    CHECK(g.power_integral(q) == doctest::Approx(std::pow(g.K(), q) / ((1 - q) + q / g.c())).epsilon(1e-13));
    CHECK(hardy_operator(g).power_integral(q) == doctest::Approx(bellman_value(p)).epsilon(1e-10));
  }
}

TEST_CASE("upper_bound_check: spec examples") {
  const TreePtr t = make_dyadic_tree(2);
  UpperBoundReport r = upper_bound_check(0.5, StepFunction(t, {4, 4, 4, 4}));
  CHECK(r.I == 2.0);
  CHECK(r.bound == 2.0);
  CHECK(r.slack() == 0.0);
  CHECK(r.holds);

  r = upper_bound_check(0.5, StepFunction(t, {4, 0, 0, 0}), Arithmetic::kExact);
  CHECK(r.f == 1.0);
  CHECK(r.h == 0.5);
  CHECK(r.I == doctest::Approx(1.353553).epsilon(1e-6));
  CHECK(r.bound == doctest::Approx(0.5 * oracle::omega_half(2.0)).epsilon(1e-12));
  CHECK(r.I < r.bound);
  CHECK(r.holds);

  r = upper_bound_check(0.5, StepFunction(t, {0, 0, 0, 0}));
  CHECK(r.holds);
  CHECK(r.I == 0.0);
}

TEST_CASE("intermediate_chain_check: spec examples") {
  const TreePtr t = make_dyadic_tree(2);
  ChainReport r = intermediate_chain_check(0.5, StepFunction(t, {4, 4, 4, 4}), Arithmetic::kExact);
  CHECK(r.IV == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.covering.lhs == doctest::Approx(r.covering.rhs).epsilon(1e-15));
  CHECK(r.holder.lhs == doctest::Approx(r.holder.rhs).epsilon(1e-15));
  CHECK(r.holds());

  r = intermediate_chain_check(0.5, StepFunction(t, {4, 0, 0, 0}));
  CHECK(r.IV == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.holds());
  CHECK(r.covering.rhs == doctest::Approx(2.0 - 0.5).epsilon(1e-15));

  CHECK_THROWS_AS(intermediate_chain_check(0.5, StepFunction(t, {0, 0, 0, 0})), std::invalid_argument);
}

TEST_CASE("upper bound and proof chain hold on random functions") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const TreePtr t = make_dyadic_tree(1 + trial % 8);
    const StepFunction phi(t, oracle::random_values(rng, t->leaf_count(), 1000.0));
    for (double q : {0.25, 0.5, 0.75}) {
      for (Arithmetic mode : {Arithmetic::kFloat, Arithmetic::kExact}) {
        CHECK(upper_bound_check(q, phi, mode).holds);
        CHECK(intermediate_chain_check(q, phi, mode).holds());
      }
    }
  }
}

TEST_CASE("hardy_identity_check: spec examples") {
  HardyIdentityReport r = hardy_identity_check(MonotoneProfile::constant(4.0), 0.5);
  CHECK(r.lhs == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.rhs == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.holds);

  r = hardy_identity_check(PowerProfile(1.0, 4.0), 0.5);
  CHECK(r.lhs == doctest::Approx(1.6).epsilon(1e-14));
  CHECK(r.rhs == doctest::Approx(1.6).epsilon(1e-14));
  CHECK(r.holds);

  r = hardy_identity_check(MonotoneProfile({0, 0.25, 0.75, 1}, {3, 2, 1}), 0.5);
  CHECK(r.abs_error <= 1e-8);
  CHECK(r.holds);
  // Independent midpoint evaluation of the left side.
  const HardyTransform h(MonotoneProfile({0, 0.25, 0.75, 1}, {3, 2, 1}));
  CHECK(r.lhs == doctest::Approx(oracle::midpoint([&](double t) { return std::sqrt(h(t)); }, 0.0, 1.0, 400000))
                     .epsilon(1e-7));
}

TEST_CASE("Hardy identity on random step profiles and power profiles") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const TreePtr t = make_dyadic_tree(1 + trial % 6);
    const MonotoneProfile p = decreasing_rearrangement(StepFunction(t, oracle::random_values(rng, t->leaf_count())));
    const double q = 0.05 + 0.9 * u(rng);
    CHECK(hardy_identity_check(p, q).holds);
    CHECK(hardy_identity_check(PowerProfile(0.1 + 5 * u(rng), 1.0 + 20 * u(rng)), q).holds);
  }
}

TEST_CASE("Holder specialization holds on random pairs") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const TreePtr t = make_dyadic_tree(1 + trial % 6);
    const StepFunction a(t, oracle::random_values(rng, t->leaf_count()));
    const StepFunction b(t, oracle::random_values(rng, t->leaf_count()));
    CHECK(holder_specialization_check(0.05 + 0.9 * u(rng), a, b).holds);
  }
  // Equality when phi2^(q/(1-q)) is proportional to phi1: phi1 = phi2 = 1 and q = 1/2.
  const TreePtr t = make_dyadic_tree(2);
  const Report r = holder_specialization_check(0.5, StepFunction(t, {1, 1, 1, 1}), StepFunction(t, {1, 1, 1, 1}));
  CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-15));
}
