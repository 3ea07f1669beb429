// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "dyadic/tree_io.hpp"
#include "oracles.hpp"

using namespace dyadic;

TEST_CASE("dyadic step functions round-trip with exact rational measures") {
  const StepFunction phi(make_dyadic_tree(2), {4, 0, 0.375, 1e-3});
  const std::string text = serialize_step_function(phi);
  CHECK(text.find("\"measure\": \"1/4\"") != std::string::npos);
  CHECK(text.find("\"kind\": \"dyadic\"") != std::string::npos);
  const StepFunction back = parse_step_function(text);
  CHECK(back.tree().is_dyadic());
  CHECK(back.tree().depth() == 2);
  for (std::size_t i = 0; i < phi.size(); ++i) CHECK(back.value(i) == phi.value(i));
}

TEST_CASE("general trees round-trip") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = std::make_shared<const Tree>(Tree::from_spec(oracle::random_spec(rng, 3)));
    const StepFunction phi(t, oracle::random_values(rng, t->leaf_count()));
    const StepFunction back = parse_step_function(serialize_step_function(phi, -1));
    REQUIRE(back.size() == phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
      CHECK(back.value(i) == phi.value(i));
      CHECK(back.tree().leaf_measure(i) == t->leaf_measure(i));
    }
    const Tree tree_only = parse_tree(serialize_tree(*t));
    CHECK(tree_only.node_count() == t->node_count());
  }
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(parse_tree("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tree("{\"kind\": \"general\"}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tree(R"({"kind": "general", "root": {"measure": 1, "children": [{"measure": 1}]}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_tree(R"({"kind": "dyadic", "depth": 1, "root": {"measure": "1", "children": [
      {"measure": "1/4"}, {"measure": "3/4"}]}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_step_function(R"({"kind": "general", "root": {"measure": 1, "children": [
      {"measure": 0.5, "value": 1}, {"measure": 0.5}]}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_tree(R"({"kind": "weird", "root": {"measure": 1}})"), std::invalid_argument);
}
