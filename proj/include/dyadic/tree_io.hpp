// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include "dyadic/tree.hpp"

namespace dyadic {

/// Nested JSON records, one per node:
///   {"kind": "dyadic", "depth": 2,
///    "root": {"measure": "1", "children": [{"measure": "1/2", "children": [...]}, ...]}}
/// Leaves carry "value" when a step function is serialized. Dyadic measures are
/// exact rationals "p/2^k" rendered in decimal; general trees and leaf values
/// use the shortest decimal that reads back to the same double.
std::string serialize_tree(const Tree& tree, int indent = 2);
std::string serialize_step_function(const StepFunction& phi, int indent = 2);

Tree parse_tree(const std::string& text);
StepFunction parse_step_function(const std::string& text);

}  // namespace dyadic
