// SPDX-License-Identifier: MIT
// Independent reference implementations used as test oracles. They recompute
// everything from the leaf values by direct enumeration and share no code
// paths with the library beyond the Tree accessors.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "dyadic/tree.hpp"

namespace oracle {

/// M_T phi by enumerating every ancestor of every leaf and summing its leaves from scratch.
inline std::vector<double> maximal(const dyadic::StepFunction& phi) {
  const dyadic::Tree& t = phi.tree();
  std::vector<double> out(phi.size(), 0.0);
  for (std::size_t leaf = 0; leaf < phi.size(); ++leaf) {
    for (dyadic::NodeId node = t.leaf_node(leaf); node >= 0; node = t.parent(node)) {
      double mass = 0.0;
      double measure = 0.0;
      for (std::size_t j = t.leaf_begin(node); j < t.leaf_end(node); ++j) {
        mass += phi.value(j) * t.leaf_measure(j);
        measure += t.leaf_measure(j);
      }
      out[leaf] = std::max(out[leaf], mass / measure);
    }
  }
  return out;
}

/// Dyadic-only variant that never touches the tree: ancestors of leaf j at
/// level l cover leaves [(j >> s) << s, ((j >> s) + 1) << s) with s = depth - l.
inline std::vector<double> dyadic_maximal(const std::vector<double>& v) {
  const std::size_t n = v.size();
  int depth = 0;
  while ((std::size_t{1} << depth) < n) ++depth;
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (int s = 0; s <= depth; ++s) {
      const std::size_t b = (j >> s) << s;
      double sum = 0.0;
      for (std::size_t i = b; i < b + (std::size_t{1} << s); ++i) sum += v[i];
      out[j] = std::max(out[j], sum / static_cast<double>(std::size_t{1} << s));
    }
  }
  return out;
}

/// Midpoint rule with `steps` cells, for smooth integrands.
template <class F>
double midpoint(F f, double a, double b, int steps) {
  const double w = (b - a) / steps;
  double sum = 0.0;
  for (int i = 0; i < steps; ++i) sum += f(a + (i + 0.5) * w);
  return sum * w;
}

/// Closed form of omega_{1/2}: sqrt(c) solves u^2 - 2 z u + 1 = 0, so omega = z + sqrt(z^2 - 1).
inline double omega_half(double z) { return z + std::sqrt(z * z - 1.0); }

/// Random dyadic values (multiples of 2^-8), about a quarter of them exactly 0.
inline std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double scale = 16.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  bool any = false;
  for (double& x : v) {
    x = u(rng) < 0.25 ? 0.0 : std::round(scale * std::pow(u(rng), 3.0) * 256.0) / 256.0;
    any = any || x > 0.0;
  }
  if (!any) v[0] = 1.0;
  return v;
}

/// Random general tree: branching 2..4, random positive child weights, given depth.
inline dyadic::NodeSpec random_spec(std::mt19937_64& rng, int depth, double measure = 1.0) {
  dyadic::NodeSpec node{measure, {}};
  if (depth == 0) return node;
  std::uniform_int_distribution<int> branch(2, 4);
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  const int k = branch(rng);
  std::vector<double> w(k);
  double total = 0.0;
  for (double& x : w) total += (x = weight(rng));
  double used = 0.0;
  for (int i = 0; i < k; ++i) {
    const double m = i + 1 == k ? measure - used : measure * w[i] / total;
    used += m;
    node.children.push_back(random_spec(rng, depth - 1, m));
  }
  return node;
}

}  // namespace oracle
