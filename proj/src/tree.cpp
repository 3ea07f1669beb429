// SPDX-License-Identifier: MIT
#include "dyadic/tree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dyadic {

namespace {

constexpr double kSumTolerance = 1e-12;

int dyadic_level(NodeId node) { return std::bit_width(static_cast<std::uint64_t>(node + 1)) - 1; }

NodeId dyadic_first(int level) { return (NodeId{1} << level) - 1; }

}  // namespace

Tree Tree::dyadic(int depth) {
  if (depth < 1) throw std::invalid_argument("dyadic tree depth must be >= 1");
  if (depth > kMaxDyadicDepth) {
    throw std::invalid_argument("dyadic tree depth " + std::to_string(depth) + " exceeds maximum " +
                                std::to_string(kMaxDyadicDepth));
  }
  Tree t;
  t.dyadic_ = true;
  t.depth_ = depth;
  return t;
}

Tree Tree::from_spec(const NodeSpec& root) {
  if (std::abs(root.measure - 1.0) > kSumTolerance) {
    throw std::invalid_argument("root measure must equal 1");
  }
  Tree t;
  struct Frame {
    const NodeSpec* spec;
    NodeId parent;
    int level;
  };
  // Pre-order traversal; children pushed in reverse so they pop left to right.
  std::vector<Frame> stack{{&root, -1, 0}};
  std::vector<std::vector<NodeId>> kids;
  while (!stack.empty()) {
    const Frame fr = stack.back();
    stack.pop_back();
    const auto id = static_cast<NodeId>(t.measure_.size());
    const NodeSpec& s = *fr.spec;
    if (!(s.measure > 0.0) || !std::isfinite(s.measure)) {
      throw std::invalid_argument("node measures must be positive and finite");
    }
    if (s.children.size() == 1) throw std::invalid_argument("internal nodes need at least two children");
    if (!s.children.empty()) {
      double sum = 0.0;
      for (const auto& c : s.children) sum += c.measure;
      if (std::abs(sum - s.measure) > kSumTolerance) {
        throw std::invalid_argument("children measures do not sum to the parent measure");
      }
    }
    t.measure_.push_back(s.measure);
    t.parent_.push_back(fr.parent);
    t.level_.push_back(fr.level);
    kids.emplace_back();
    if (fr.parent >= 0) kids[static_cast<std::size_t>(fr.parent)].push_back(id);
    t.depth_ = std::max(t.depth_, fr.level);
    for (auto it = s.children.rbegin(); it != s.children.rend(); ++it) {
      stack.push_back({&*it, id, fr.level + 1});
    }
  }
  const std::size_t n = t.measure_.size();
  t.child_offset_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    t.child_offset_[i + 1] = t.child_offset_[i] + kids[i].size();
    t.child_index_.insert(t.child_index_.end(), kids[i].begin(), kids[i].end());
  }
  // Pre-order numbering visits leaves left to right; ranges close bottom-up.
  t.leaf_begin_.assign(n, 0);
  t.leaf_end_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (kids[i].empty()) {
      t.leaf_begin_[i] = t.leaf_nodes_.size();
      t.leaf_end_[i] = t.leaf_begin_[i] + 1;
      t.leaf_nodes_.push_back(static_cast<NodeId>(i));
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    if (!kids[i].empty()) {
      t.leaf_begin_[i] = t.leaf_begin_[static_cast<std::size_t>(kids[i].front())];
      t.leaf_end_[i] = t.leaf_end_[static_cast<std::size_t>(kids[i].back())];
    }
  }
  return t;
}

void Tree::check_node(NodeId node) const {
  if (node < 0 || static_cast<std::size_t>(node) >= node_count()) {
    throw std::out_of_range("node id " + std::to_string(node) + " out of range");
  }
}

std::size_t Tree::node_count() const {
  return dyadic_ ? (std::size_t{2} << depth_) - 1 : measure_.size();
}

std::size_t Tree::leaf_count() const { return dyadic_ ? std::size_t{1} << depth_ : leaf_nodes_.size(); }

double Tree::measure(NodeId node) const {
  check_node(node);
  return dyadic_ ? std::ldexp(1.0, -dyadic_level(node)) : measure_[static_cast<std::size_t>(node)];
}

std::optional<DyadicRational> Tree::exact_measure(NodeId node) const {
  check_node(node);
  if (!dyadic_) return std::nullopt;
  return DyadicRational::power_of_two(-dyadic_level(node));
}

int Tree::level(NodeId node) const {
  check_node(node);
  return dyadic_ ? dyadic_level(node) : level_[static_cast<std::size_t>(node)];
}

NodeId Tree::parent(NodeId node) const {
  check_node(node);
  if (dyadic_) return node == 0 ? -1 : (node - 1) / 2;
  return parent_[static_cast<std::size_t>(node)];
}

std::vector<NodeId> Tree::children(NodeId node) const {
  check_node(node);
  if (dyadic_) {
    if (dyadic_level(node) == depth_) return {};
    return {2 * node + 1, 2 * node + 2};
  }
  const auto i = static_cast<std::size_t>(node);
  return {child_index_.begin() + static_cast<std::ptrdiff_t>(child_offset_[i]),
          child_index_.begin() + static_cast<std::ptrdiff_t>(child_offset_[i + 1])};
}

bool Tree::is_leaf(NodeId node) const {
  check_node(node);
  if (dyadic_) return dyadic_level(node) == depth_;
  const auto i = static_cast<std::size_t>(node);
  return child_offset_[i] == child_offset_[i + 1];
}

NodeId Tree::leaf_node(std::size_t leaf) const {
  if (leaf >= leaf_count()) throw std::out_of_range("leaf index out of range");
  return dyadic_ ? dyadic_first(depth_) + static_cast<NodeId>(leaf) : leaf_nodes_[leaf];
}

double Tree::leaf_measure(std::size_t leaf) const {
  if (dyadic_) {
    if (leaf >= leaf_count()) throw std::out_of_range("leaf index out of range");
    return std::ldexp(1.0, -depth_);
  }
  return measure_[static_cast<std::size_t>(leaf_node(leaf))];
}

std::vector<double> Tree::leaf_measures() const {
  if (dyadic_) return std::vector<double>(leaf_count(), std::ldexp(1.0, -depth_));
  std::vector<double> out;
  out.reserve(leaf_nodes_.size());
  for (NodeId id : leaf_nodes_) out.push_back(measure_[static_cast<std::size_t>(id)]);
  return out;
}

std::size_t Tree::leaf_begin(NodeId node) const {
  check_node(node);
  if (!dyadic_) return leaf_begin_[static_cast<std::size_t>(node)];
  const int lv = dyadic_level(node);
  return static_cast<std::size_t>(node - dyadic_first(lv)) << (depth_ - lv);
}

std::size_t Tree::leaf_end(NodeId node) const {
  check_node(node);
  if (!dyadic_) return leaf_end_[static_cast<std::size_t>(node)];
  const int lv = dyadic_level(node);
  return static_cast<std::size_t>(node - dyadic_first(lv) + 1) << (depth_ - lv);
}

std::vector<double> Tree::level_measures(int lv) const {
  if (lv < 0 || lv > depth_) throw std::out_of_range("level out of range");
  if (dyadic_) return std::vector<double>(std::size_t{1} << lv, std::ldexp(1.0, -lv));
  std::vector<double> out;
  for (std::size_t i = 0; i < measure_.size(); ++i) {
    if (level_[i] == lv) out.push_back(measure_[i]);
  }
  return out;
}

bool Tree::has_equal_leaves() const {
  if (dyadic_) return true;
  const auto m = leaf_measures();
  return std::all_of(m.begin(), m.end(), [&](double x) { return x == m.front(); });
}

NodeSpec Tree::to_spec() const {
  auto build = [this](auto&& self, NodeId node) -> NodeSpec {
    NodeSpec s;
    s.measure = measure(node);
    for (NodeId c : children(node)) s.children.push_back(self(self, c));
    return s;
  };
  return build(build, 0);
}

StepFunction::StepFunction(TreePtr tree, std::vector<double> values) : tree_(std::move(tree)), values_(std::move(values)) {
  if (!tree_) throw std::invalid_argument("step function needs a tree");
  if (values_.size() != tree_->leaf_count()) {
    throw std::invalid_argument("step function has " + std::to_string(values_.size()) + " values for " +
                                std::to_string(tree_->leaf_count()) + " leaves");
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("step function values must be finite and >= 0");
  }
}

StepFunction StepFunction::scaled(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("scale factor must be positive");
  std::vector<double> v(values_);
  for (double& x : v) x *= s;
  return {tree_, std::move(v)};
}

StepFunction StepFunction::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != values_.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<bool> seen(perm.size(), false);
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || seen[perm[i]]) throw std::invalid_argument("not a permutation");
    seen[perm[i]] = true;
    v[i] = values_[perm[i]];
  }
  return {tree_, std::move(v)};
}

StepFunction StepFunction::refined() const {
  if (!tree_->is_dyadic()) throw std::invalid_argument("refinement is defined for dyadic trees");
  std::vector<double> v;
  v.reserve(2 * values_.size());
  for (double x : values_) {
    v.push_back(x);
    v.push_back(x);
  }
  return {make_dyadic_tree(tree_->depth() + 1), std::move(v)};
}

bool StepFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double integrate(const StepFunction& phi, double exponent) {
  if (!(exponent > 0.0 && exponent <= 1.0)) throw std::invalid_argument("integration exponent must lie in (0,1]");
  const Tree& t = phi.tree();
  double sum = 0.0;
  if (t.is_dyadic()) {
    for (double v : phi.values()) sum += exponent == 1.0 ? v : (v == 0.0 ? 0.0 : std::pow(v, exponent));
    return std::ldexp(sum, -t.depth());
  }
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double v = phi.value(i);
    sum += (exponent == 1.0 ? v : (v == 0.0 ? 0.0 : std::pow(v, exponent))) * t.leaf_measure(i);
  }
  return sum;
}

}  // namespace dyadic
