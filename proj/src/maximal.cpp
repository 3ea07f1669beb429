// SPDX-License-Identifier: MIT
#include "dyadic/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dyadic {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// Dyadic tree, heap numbering. Internal node sums are overwritten in place by
// the best ancestor average during the downward pass.
template <class Scalar, class Avg, class FromLeaf>
void dyadic_sweep(int depth, std::span<const double> values, std::vector<Scalar>& leaf_out, std::vector<int>& level_out,
                  Avg average, FromLeaf from_leaf) {
  const std::size_t leaves = std::size_t{1} << depth;
  const std::size_t internal = leaves - 1;
  std::vector<Scalar> node(internal);
  auto child_sum = [&](std::size_t child) -> Scalar {
    return child >= internal ? from_leaf(values[child - internal]) : node[child];
  };
  for (std::size_t id = internal; id-- > 0;) node[id] = child_sum(2 * id + 1) + child_sum(2 * id + 2);

  std::vector<signed char> best_level(internal);
  int lv = 0;
  std::size_t next_level_start = 1;
  for (std::size_t id = 0; id < internal; ++id) {
    if (id + 1 == next_level_start * 2) {
      ++lv;
      next_level_start *= 2;
    }
    const Scalar avg = average(node[id], depth - lv);
    if (id == 0) {
      node[id] = avg;
      best_level[id] = 0;
      continue;
    }
    const std::size_t parent = (id - 1) / 2;
    if (avg > node[parent]) {
      node[id] = avg;
      best_level[id] = static_cast<signed char>(lv);
    } else {
      node[id] = node[parent];
      best_level[id] = best_level[parent];
    }
  }
  leaf_out.resize(leaves);
  level_out.resize(leaves);
  for (std::size_t i = 0; i < leaves; ++i) {
    const std::size_t parent = (internal + i - 1) / 2;
    const Scalar v = from_leaf(values[i]);
    if (v > node[parent]) {
      leaf_out[i] = v;
      level_out[i] = depth;
    } else {
      leaf_out[i] = node[parent];
      level_out[i] = best_level[parent];
    }
  }
}

MaximalResult general_maximal(const StepFunction& phi) {
  const Tree& t = phi.tree();
  const std::size_t n = t.node_count();
  std::vector<double> sum(n, 0.0);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    sum[static_cast<std::size_t>(t.leaf_node(i))] = phi.value(i) * t.leaf_measure(i);
  }
  // Pre-order: children carry larger ids than their parent.
  for (std::size_t id = n; id-- > 1;) {
    sum[static_cast<std::size_t>(t.parent(static_cast<NodeId>(id)))] += sum[id];
  }
  std::vector<double> best(n);
  std::vector<int> best_level(n);
  for (std::size_t id = 0; id < n; ++id) {
    const auto node = static_cast<NodeId>(id);
    const double avg = t.is_leaf(node) ? phi.value(t.leaf_begin(node)) : sum[id] / t.measure(node);
    const NodeId p = t.parent(node);
    if (p < 0 || avg > best[static_cast<std::size_t>(p)]) {
      best[id] = avg;
      best_level[id] = t.level(node);
    } else {
      best[id] = best[static_cast<std::size_t>(p)];
      best_level[id] = best_level[static_cast<std::size_t>(p)];
    }
  }
  std::vector<double> out(phi.size());
  std::vector<int> levels(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const auto id = static_cast<std::size_t>(t.leaf_node(i));
    out[i] = best[id];
    levels[i] = best_level[id];
  }
  return {phi, StepFunction(phi.tree_ptr(), std::move(out)), std::move(levels), std::nullopt};
}

void check_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
}

}  // namespace

std::string Report::to_string() const {
  return "{lhs=" + format17(lhs) + ", rhs=" + format17(rhs) + ", ratio=" + format17(ratio()) +
         ", holds=" + (holds ? "true" : "false") + "}";
}

bool holds_with_tolerance(double lhs, double rhs, double tol) {
  if (lhs <= rhs) return true;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return lhs - rhs <= tol * scale;
}

MaximalResult maximal_operator(const StepFunction& phi, Arithmetic mode) {
  const Tree& t = phi.tree();
  if (mode == Arithmetic::kExact) {
    if (!t.is_dyadic()) throw std::invalid_argument("exact mode requires a dyadic tree");
    std::vector<DyadicRational> exact;
    std::vector<int> levels;
    dyadic_sweep<DyadicRational>(
        t.depth(), phi.values(), exact, levels,
        [](const DyadicRational& sum, int below) { return sum.ldexp(-below); },
        [](double v) { return DyadicRational::from_double(v); });
    std::vector<double> out(exact.size());
    std::transform(exact.begin(), exact.end(), out.begin(), [](const DyadicRational& r) { return r.to_double(); });
    return {phi, StepFunction(phi.tree_ptr(), std::move(out)), std::move(levels), std::move(exact)};
  }
  if (!t.is_dyadic()) return general_maximal(phi);
  std::vector<double> out;
  std::vector<int> levels;
  dyadic_sweep<double>(
      t.depth(), phi.values(), out, levels, [](double sum, int below) { return std::ldexp(sum, -below); },
      [](double v) { return v; });
  return {phi, StepFunction(phi.tree_ptr(), std::move(out)), std::move(levels), std::nullopt};
}

Report weak_type_check(const MaximalResult& m, double lambda, LevelSet kind, Arithmetic mode) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
  const Tree& t = m.input.tree();
  const std::size_t n = m.input.size();
  if (mode == Arithmetic::kExact) {
    if (!m.exact) throw std::invalid_argument("exact weak-type check needs an exact maximal result");
    const auto lam = DyadicRational::from_double(lambda);
    DyadicRational measure;
    DyadicRational mass;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& mv = (*m.exact)[i];
      const bool in = kind == LevelSet::kStrict ? mv > lam : mv >= lam;
      if (!in) continue;
      const auto mu = *t.exact_measure(t.leaf_node(i));
      measure += mu;
      mass += DyadicRational::from_double(m.input.value(i)) * mu;
    }
    Report r;
    r.lhs = measure.to_double();
    r.rhs = static_cast<double>(mass.to_long_double() / static_cast<long double>(lambda));
    r.holds = lam * measure <= mass;
    return r;
  }
  double measure = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mv = m.maximal.value(i);
    const bool in = kind == LevelSet::kStrict ? mv > lambda : mv >= lambda;
    if (!in) continue;
    measure += t.leaf_measure(i);
    mass += m.input.value(i) * t.leaf_measure(i);
  }
  Report r{measure, mass / lambda, true};
  r.holds = holds_with_tolerance(r.lhs, r.rhs, kFloatTolerance);
  return r;
}

Report weak_type_check(const StepFunction& phi, double lambda, LevelSet kind, Arithmetic mode) {
  return weak_type_check(maximal_operator(phi, mode), lambda, kind, mode);
}

Report kolmogorov_check(double q, const MaximalResult& m, std::span<const std::size_t> leaves, Arithmetic mode) {
  check_q(q);
  if (leaves.empty()) throw std::invalid_argument("Kolmogorov check needs a nonempty leaf set");
  const Tree& t = m.input.tree();
  std::vector<bool> seen(m.input.size(), false);
  long double lhs = 0.0L;
  long double measure = 0.0L;
  for (std::size_t leaf : leaves) {
    if (leaf >= seen.size()) throw std::out_of_range("leaf index out of range");
    if (seen[leaf]) throw std::invalid_argument("duplicate leaf in set");
    seen[leaf] = true;
    const long double mv = (mode == Arithmetic::kExact && m.exact) ? (*m.exact)[leaf].to_long_double()
                                                                    : static_cast<long double>(m.maximal.value(leaf));
    const long double mu = t.leaf_measure(leaf);
    lhs += std::pow(mv, static_cast<long double>(q)) * mu;
    measure += mu;
  }
  long double f = 0.0L;
  for (std::size_t i = 0; i < m.input.size(); ++i) {
    f += static_cast<long double>(m.input.value(i)) * t.leaf_measure(i);
  }
  const long double lq = q;
  const long double rhs = std::pow(measure, 1.0L - lq) * std::pow(f, lq) / (1.0L - lq);
  Report r{static_cast<double>(lhs), static_cast<double>(rhs), true};
  r.holds = holds_with_tolerance(r.lhs, r.rhs, mode == Arithmetic::kExact ? kExactPowerTolerance : kFloatTolerance);
  return r;
}

Report kolmogorov_check(double q, const StepFunction& phi, std::span<const std::size_t> leaves, Arithmetic mode) {
  return kolmogorov_check(q, maximal_operator(phi, mode), leaves, mode);
}

}  // namespace dyadic
