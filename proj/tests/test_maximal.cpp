// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "dyadic/maximal.hpp"
#include "oracles.hpp"

using namespace dyadic;

namespace {
std::vector<double> as_vector(std::span<const double> s) { return {s.begin(), s.end()}; }
}  // namespace

TEST_CASE("maximal_operator: constant function is a fixed point") {
  const StepFunction phi(make_dyadic_tree(3), std::vector<double>(8, 2.5));
  const MaximalResult m = maximal_operator(phi);
  for (double v : m.maximal.values()) CHECK(v == 2.5);
  // Every ancestor ties; the root is the shallowest.
  for (int level : m.argmax_level) CHECK(level == 0);
}

TEST_CASE("maximal_operator: (4,0,0,0) and its mirror image") {
  const TreePtr t = make_dyadic_tree(2);
  const MaximalResult a = maximal_operator(StepFunction(t, {4, 0, 0, 0}));
  CHECK(as_vector(a.maximal.values()) == std::vector<double>{4, 2, 1, 1});
  CHECK(a.argmax_level == std::vector<int>{2, 1, 0, 0});
  CHECK(as_vector(a.maximal.values()) == oracle::dyadic_maximal({4, 0, 0, 0}));
  const MaximalResult b = maximal_operator(StepFunction(t, {0, 0, 0, 4}));
  CHECK(as_vector(b.maximal.values()) == std::vector<double>{1, 1, 2, 4});
  CHECK(as_vector(b.maximal.values()) == oracle::dyadic_maximal({0, 0, 0, 4}));
}

TEST_CASE("maximal_operator agrees with ancestor enumeration on dyadic trees") {
  std::mt19937_64 rng(17);
  for (int depth = 1; depth <= 9; ++depth) {
    const TreePtr t = make_dyadic_tree(depth);
    for (int trial = 0; trial < 20; ++trial) {
      const auto v = oracle::random_values(rng, t->leaf_count());
      const StepFunction phi(t, v);
      const auto expected = oracle::dyadic_maximal(v);
      const MaximalResult m = maximal_operator(phi);
      const MaximalResult e = maximal_operator(phi, Arithmetic::kExact);
      for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(m.maximal.value(i) == doctest::Approx(expected[i]).epsilon(1e-14));
        // Dyadic inputs: the exact maximal values are exactly the oracle's averages.
        CHECK(e.maximal.value(i) == expected[i]);
        CHECK((*e.exact)[i].to_double() == expected[i]);
      }
    }
  }
}

TEST_CASE("maximal_operator agrees with ancestor enumeration on general trees") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = std::make_shared<const Tree>(Tree::from_spec(oracle::random_spec(rng, 1 + trial % 4)));
    const StepFunction phi(t, oracle::random_values(rng, t->leaf_count()));
    const auto expected = oracle::maximal(phi);
    const MaximalResult m = maximal_operator(phi);
    for (std::size_t i = 0; i < phi.size(); ++i) {
      CHECK(m.maximal.value(i) == doctest::Approx(expected[i]).epsilon(1e-12));
    }
    CHECK_THROWS(maximal_operator(phi, Arithmetic::kExact));
  }
}

TEST_CASE("maximal result invariants, homogeneity, monotonicity and refinement") {
  std::mt19937_64 rng(23);
  const TreePtr t = make_dyadic_tree(6);
  for (int trial = 0; trial < 50; ++trial) {
    const StepFunction phi(t, oracle::random_values(rng, t->leaf_count()));
    const MaximalResult m = maximal_operator(phi);
    const double mass = integrate(phi, 1.0);
    for (std::size_t i = 0; i < phi.size(); ++i) {
      CHECK(m.maximal.value(i) >= phi.value(i));
      CHECK(m.maximal.value(i) >= mass * (1 - 1e-15));
    }
    // Scaling by a power of two is exact, so levels and values scale exactly.
    const MaximalResult s = maximal_operator(phi.scaled(4.0));
    for (std::size_t i = 0; i < phi.size(); ++i) CHECK(s.maximal.value(i) == 4.0 * m.maximal.value(i));
    CHECK(s.argmax_level == m.argmax_level);

    std::vector<double> bigger(phi.values().begin(), phi.values().end());
    for (double& x : bigger) x += std::round(8.0 * std::uniform_real_distribution<double>(0, 1)(rng)) / 8.0;
    const MaximalResult b = maximal_operator(StepFunction(t, bigger));
    for (std::size_t i = 0; i < phi.size(); ++i) CHECK(b.maximal.value(i) >= m.maximal.value(i));

    const MaximalResult r = maximal_operator(phi.refined());
    for (std::size_t i = 0; i < phi.size(); ++i) {
      CHECK(r.maximal.value(2 * i) == m.maximal.value(i));
      CHECK(r.maximal.value(2 * i + 1) == m.maximal.value(i));
    }
  }
}

TEST_CASE("weak_type_check: spec examples") {
  const TreePtr t = make_dyadic_tree(2);
  const StepFunction c(t, {3, 3, 3, 3});
  Report r = weak_type_check(c, 2.0);
  CHECK(r.lhs == 1.0);
  CHECK(r.rhs == 1.5);
  CHECK(r.holds);
  r = weak_type_check(c, 3.0);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
  CHECK(r.holds);
  r = weak_type_check(StepFunction(t, {4, 0, 0, 0}), 1.5);
  CHECK(r.lhs == 0.5);
  CHECK(r.rhs == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(r.holds);
  CHECK_THROWS(weak_type_check(c, 0.0));
}

TEST_CASE("weak_type_check: strict and non-strict level sets differ only at values of M") {
  const StepFunction phi(make_dyadic_tree(2), {4, 0, 0, 0});
  CHECK(weak_type_check(phi, 2.0, LevelSet::kStrict).lhs == 0.25);
  CHECK(weak_type_check(phi, 2.0, LevelSet::kNonStrict).lhs == 0.5);
  CHECK(weak_type_check(phi, 2.0, LevelSet::kNonStrict, Arithmetic::kExact).holds);
  CHECK(weak_type_check(phi, 1.9, LevelSet::kStrict).lhs == weak_type_check(phi, 1.9, LevelSet::kNonStrict).lhs);
}

TEST_CASE("kolmogorov_check: spec examples") {
  const TreePtr t = make_dyadic_tree(2);
  const std::vector<std::size_t> all{0, 1, 2, 3};
  Report r = kolmogorov_check(0.5, StepFunction(t, {4, 0, 0, 0}), all);
  CHECK(r.lhs == doctest::Approx(2 * 0.25 + std::sqrt(2.0) * 0.25 + 0.5).epsilon(1e-15));
  CHECK(r.lhs == doctest::Approx(1.35355339).epsilon(1e-8));
  CHECK(r.rhs == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.holds);
  r = kolmogorov_check(0.5, StepFunction(t, {1, 1, 1, 1}), all);
  CHECK(r.lhs == 1.0);
  CHECK(r.rhs == 2.0);
  const std::vector<std::size_t> one{2};
  r = kolmogorov_check(0.5, StepFunction(t, {1, 1, 1, 1}), one);
  CHECK(r.lhs == 0.25);
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.ratio() == doctest::Approx(0.25));
}

TEST_CASE("kolmogorov_check: invalid leaf sets") {
  const StepFunction phi(make_dyadic_tree(2), {1, 2, 3, 4});
  CHECK_THROWS_AS(kolmogorov_check(0.5, phi, std::vector<std::size_t>{}), std::invalid_argument);
  CHECK_THROWS_AS(kolmogorov_check(0.5, phi, std::vector<std::size_t>{1, 1}), std::invalid_argument);
  CHECK_THROWS(kolmogorov_check(0.5, phi, std::vector<std::size_t>{7}));
  CHECK_THROWS(kolmogorov_check(1.0, phi, std::vector<std::size_t>{0}));
}

TEST_CASE("weak type and Kolmogorov inequalities hold on random inputs in both modes") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const TreePtr t = make_dyadic_tree(1 + trial % 7);
    const StepFunction phi(t, oracle::random_values(rng, t->leaf_count(), 100.0));
    for (Arithmetic mode : {Arithmetic::kFloat, Arithmetic::kExact}) {
      const MaximalResult m = maximal_operator(phi, mode);
      for (int i = 0; i < 5; ++i) {
        const double lambda = 0.01 + 20.0 * u(rng);
        CHECK(weak_type_check(m, lambda, LevelSet::kStrict, mode).holds);
        CHECK(weak_type_check(m, lambda, LevelSet::kNonStrict, mode).holds);
        std::vector<std::size_t> e;
        for (std::size_t j = 0; j < phi.size(); ++j) {
          if (u(rng) < 0.5) e.push_back(j);
        }
        if (e.empty()) e.push_back(0);
        CHECK(kolmogorov_check(0.05 + 0.9 * u(rng), m, e, mode).holds);
      }
    }
  }
}

TEST_CASE("Report renders 17 significant digits") {
  const Report r{1.0 / 3.0, 0.5, true};
  CHECK(r.to_string() == "{lhs=0.33333333333333331, rhs=0.5, ratio=0.66666666666666663, holds=true}");
  CHECK(holds_with_tolerance(1.0 + 1e-13, 1.0, 1e-12));
  CHECK_FALSE(holds_with_tolerance(1.0 + 1e-13, 1.0, 0.0));
}
