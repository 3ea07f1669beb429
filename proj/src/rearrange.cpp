// SPDX-License-Identifier: MIT
#include "dyadic/rearrange.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dyadic/hardy.hpp"

namespace dyadic {

namespace {

std::vector<std::size_t> descending_order(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

}  // namespace

MonotoneProfile decreasing_rearrangement(std::span<const double> values, std::span<const double> measures) {
  if (values.empty() || values.size() != measures.size()) {
    throw std::invalid_argument("rearrangement needs one measure per value");
  }
  std::vector<double> breaks{0.0};
  std::vector<double> vals;
  double t = 0.0;
  for (std::size_t i : descending_order(values)) {
    t += measures[i];
    if (!vals.empty() && vals.back() == values[i]) {
      breaks.back() = t;
    } else {
      vals.push_back(values[i]);
      breaks.push_back(t);
    }
  }
  if (std::abs(breaks.back() - 1.0) > 1e-9) throw std::invalid_argument("atom measures must sum to 1");
  breaks.back() = 1.0;
  return {std::move(breaks), std::move(vals)};
}

MonotoneProfile decreasing_rearrangement(const StepFunction& phi) {
  return decreasing_rearrangement(phi.values(), phi.tree().leaf_measures());
}

double restricted_integral(const MonotoneProfile& profile, double q, double k) {
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in (0,1]");
  if (!(k > 0.0 && k <= 1.0)) throw std::invalid_argument("k must lie in (0,1]");
  const auto t = profile.breakpoints();
  const auto v = profile.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size() && t[i] < k; ++i) {
    const double len = std::min(t[i + 1], k) - t[i];
    if (v[i] > 0.0) sum += std::pow(v[i], q) * len;
  }
  return sum;
}

RearrangementSearchReport rearrangement_search(const Tree& tree, std::span<const double> multiset, double q,
                                               std::size_t cap) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
  if (!tree.has_equal_leaves()) throw std::invalid_argument("rearrangement search needs equal-measure leaves");
  const std::size_t n = tree.leaf_count();
  if (n > cap) {
    throw std::invalid_argument("leaf count " + std::to_string(n) + " exceeds enumeration cap " + std::to_string(cap));
  }
  if (multiset.size() != n) throw std::invalid_argument("multiset size must equal the leaf count");
  for (double v : multiset) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("multiset values must be finite and >= 0");
  }

  // Leaf ranges of every ancestor of every leaf; averages over equal atoms are range means.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ancestors(n);
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    for (NodeId node = tree.leaf_node(leaf); node >= 0; node = tree.parent(node)) {
      ancestors[leaf].emplace_back(tree.leaf_begin(node), tree.leaf_end(node));
    }
  }
  std::vector<double> prefix(n + 1, 0.0);
  auto value_of = [&](std::span<const double> arrangement) {
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + arrangement[i];
    double sum = 0.0;
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
      double best = 0.0;
      for (const auto& [b, e] : ancestors[leaf]) {
        best = std::max(best, (prefix[e] - prefix[b]) / static_cast<double>(e - b));
      }
      if (best > 0.0) sum += std::pow(best, q);
    }
    return sum / static_cast<double>(n);
  };

  RearrangementSearchReport report;
  std::vector<double> arrangement(multiset.begin(), multiset.end());
  std::sort(arrangement.begin(), arrangement.end());
  report.best_value = -1.0;
  do {
    ++report.permutations;
    const double v = value_of(arrangement);
    if (v > report.best_value) {
      report.best_value = v;
      report.best_arrangement = arrangement;
    }
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));

  std::vector<double> left(multiset.begin(), multiset.end());
  std::sort(left.begin(), left.end(), std::greater<>());
  report.left_arranged_value = value_of(left);

  const std::vector<double> measures(n, 1.0 / static_cast<double>(n));
  report.hardy_bound = hardy_operator(decreasing_rearrangement(multiset, measures)).power_integral(q);
  report.holds = report.best_value <= report.hardy_bound * (1.0 + kFloatTolerance) + 1e-10 &&
                 report.left_arranged_value <= report.best_value;
  return report;
}

SymmetrizationReport symmetrization_check(const MaximalResult& m, int grid, Arithmetic mode) {
  if (grid < 1) throw std::invalid_argument("grid must be positive");
  const Tree& tree = m.input.tree();
  SymmetrizationReport out;
  out.points = grid;
  double worst_rel = INFINITY;
  auto record = [&](double t, double lhs, double rhs, bool holds) {
    if (!holds) ++out.violations;
    const double rel = (rhs - lhs) / std::max(std::abs(rhs), 1e-300);
    if (rel < worst_rel) {
      worst_rel = rel;
      out.worst = {lhs, rhs, holds};
      out.worst_t = t;
    }
  };

  if (mode == Arithmetic::kExact) {
    if (!m.exact || !tree.is_dyadic()) throw std::invalid_argument("exact symmetrization check needs an exact result");
    if (!std::has_single_bit(static_cast<unsigned>(grid))) throw std::invalid_argument("exact grid must be a power of two");
    const std::size_t n = m.input.size();
    const auto mu = DyadicRational::power_of_two(-tree.depth());
    std::vector<DyadicRational> mv(*m.exact);
    std::sort(mv.begin(), mv.end(), std::greater<>());
    std::vector<DyadicRational> phi(n);
    for (std::size_t i = 0; i < n; ++i) phi[i] = DyadicRational::from_double(m.input.value(i));
    std::sort(phi.begin(), phi.end(), std::greater<>());
    const int grid_bits = std::countr_zero(static_cast<unsigned>(grid));
    // Grid points increase, so the fully covered atoms and their mass carry over.
    DyadicRational full;
    DyadicRational covered;
    std::size_t atom = 0;
    for (int j = 1; j <= grid; ++j) {
      const DyadicRational t = DyadicRational(j).ldexp(-grid_bits);
      while (atom < n && covered + mu <= t) {
        full += phi[atom] * mu;
        covered += mu;
        ++atom;
      }
      DyadicRational prefix = full;
      if (covered < t) prefix += phi[atom] * (t - covered);
      // Left-continuous rearrangement: t sits in the atom that ends at or after it.
      const std::size_t piece = covered < t ? atom : atom - 1;
      const DyadicRational lhs = mv[piece];
      const bool holds = lhs * t <= prefix;
      record(t.to_double(), lhs.to_double(), static_cast<double>(prefix.to_long_double() / t.to_long_double()),
             holds);
    }
    return out;
  }

  const auto measures = tree.leaf_measures();
  const MonotoneProfile maximal_star = decreasing_rearrangement(m.maximal.values(), measures);
  const HardyTransform hardy = hardy_operator(decreasing_rearrangement(m.input.values(), measures));
  for (int j = 1; j <= grid; ++j) {
    const double t = static_cast<double>(j) / grid;
    const double lhs = maximal_star(t);
    const double rhs = hardy(t);
    record(t, lhs, rhs, holds_with_tolerance(lhs, rhs, kFloatTolerance));
  }
  return out;
}

}  // namespace dyadic
