// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dyadic/dyadic_rational.hpp"

namespace dyadic {

using NodeId = std::int64_t;

inline constexpr int kMaxDyadicDepth = 26;

/// Nested description of a general tree, used to build Tree instances and by
/// the text serializer. Leaves have no children.
struct NodeSpec {
  double measure = 1.0;
  std::vector<NodeSpec> children;
};

/// A finite-depth tree of measurable sets over a probability space.
///
/// Node 0 is the root X with measure 1. Every internal node has at least two
/// children whose measures are positive and add up to the parent's measure.
/// Leaves are numbered 0..leaf_count()-1 in left-to-right (depth-first) order,
/// and the leaves below any node form a contiguous range of that numbering.
///
/// The dyadic family is stored implicitly (heap numbering, measures 2^-level),
/// so depth 24 costs no per-node memory. General trees keep explicit arrays.
class Tree {
 public:
  /// Binary tree of dyadic intervals of [0,1) with `depth` levels below the root.
  static Tree dyadic(int depth);
  /// General tree; validates measures with a 1e-12 sum-to-parent tolerance.
  static Tree from_spec(const NodeSpec& root);

  [[nodiscard]] bool is_dyadic() const { return dyadic_; }
  [[nodiscard]] int depth() const { return depth_; }
  [[nodiscard]] std::size_t node_count() const;
  [[nodiscard]] std::size_t leaf_count() const;

  [[nodiscard]] double measure(NodeId node) const;
  /// Exact measure; only available on dyadic trees.
  [[nodiscard]] std::optional<DyadicRational> exact_measure(NodeId node) const;
  [[nodiscard]] int level(NodeId node) const;
  [[nodiscard]] NodeId parent(NodeId node) const;  // -1 for the root
  [[nodiscard]] std::vector<NodeId> children(NodeId node) const;
  [[nodiscard]] bool is_leaf(NodeId node) const;

  [[nodiscard]] NodeId leaf_node(std::size_t leaf) const;
  [[nodiscard]] double leaf_measure(std::size_t leaf) const;
  [[nodiscard]] std::vector<double> leaf_measures() const;
  /// Half-open range of leaf indices below `node`.
  [[nodiscard]] std::size_t leaf_begin(NodeId node) const;
  [[nodiscard]] std::size_t leaf_end(NodeId node) const;

  /// Measures of all nodes on one level, left to right.
  [[nodiscard]] std::vector<double> level_measures(int level) const;
  /// Whether all leaves carry the same measure.
  [[nodiscard]] bool has_equal_leaves() const;

  /// Nested description; for dyadic trees this materializes every node.
  [[nodiscard]] NodeSpec to_spec() const;

 private:
  Tree() = default;
  void check_node(NodeId node) const;

  bool dyadic_ = false;
  int depth_ = 0;

  // General trees only; nodes in depth-first pre-order.
  std::vector<double> measure_;
  std::vector<NodeId> parent_;
  std::vector<int> level_;
  std::vector<std::size_t> child_offset_;  // children of i: child_index_[child_offset_[i] .. child_offset_[i+1])
  std::vector<NodeId> child_index_;
  std::vector<std::size_t> leaf_begin_;
  std::vector<std::size_t> leaf_end_;
  std::vector<NodeId> leaf_nodes_;
};

using TreePtr = std::shared_ptr<const Tree>;

inline TreePtr make_dyadic_tree(int depth) { return std::make_shared<const Tree>(Tree::dyadic(depth)); }

/// A nonnegative function constant on the leaf atoms of a tree.
class StepFunction {
 public:
  StepFunction(TreePtr tree, std::vector<double> values);

  [[nodiscard]] const Tree& tree() const { return *tree_; }
  [[nodiscard]] const TreePtr& tree_ptr() const { return tree_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] double value(std::size_t leaf) const { return values_[leaf]; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }

  /// Same tree, values multiplied by s > 0.
  [[nodiscard]] StepFunction scaled(double s) const;
  /// Same tree, leaf values permuted: result.value(i) = value(perm[i]).
  [[nodiscard]] StepFunction permuted(std::span<const std::size_t> perm) const;
  /// Embeds a function on the depth-m dyadic tree into depth m+1 by splitting
  /// every leaf into two leaves carrying the same value.
  [[nodiscard]] StepFunction refined() const;
  [[nodiscard]] bool is_zero() const;

 private:
  TreePtr tree_;
  std::vector<double> values_;
};

/// Sum of value^exponent * atom measure, exponent in (0, 1]; 0^e is 0.
double integrate(const StepFunction& phi, double exponent);

}  // namespace dyadic
