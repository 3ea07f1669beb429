// SPDX-License-Identifier: MIT
#include "dyadic/tree_io.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace dyadic {

namespace {

using nlohmann::ordered_json;

ordered_json node_record(const Tree& t, NodeId node, const StepFunction* phi) {
  ordered_json rec;
  if (t.is_dyadic()) {
    rec["measure"] = t.exact_measure(node)->to_string();
  } else {
    rec["measure"] = t.measure(node);
  }
  if (t.is_leaf(node)) {
    if (phi != nullptr) rec["value"] = phi->value(t.leaf_begin(node));
  } else {
    ordered_json kids = ordered_json::array();
    for (NodeId child : t.children(node)) kids.push_back(node_record(t, child, phi));
    rec["children"] = std::move(kids);
  }
  return rec;
}

std::string dump(const Tree& t, const StepFunction* phi, int indent) {
  ordered_json doc;
  doc["kind"] = t.is_dyadic() ? "dyadic" : "general";
  doc["depth"] = t.depth();
  doc["root"] = node_record(t, 0, phi);
  return doc.dump(indent) + "\n";
}

double parse_measure(const ordered_json& m) {
  if (m.is_number()) return m.get<double>();
  if (m.is_string()) return DyadicRational::parse(m.get<std::string>()).to_double();
  throw std::invalid_argument("node measure must be a number or a rational string");
}

NodeSpec parse_node(const ordered_json& rec, std::vector<double>* values) {
  if (!rec.is_object() || !rec.contains("measure")) throw std::invalid_argument("every node needs a measure");
  NodeSpec spec{parse_measure(rec["measure"]), {}};
  if (rec.contains("children")) {
    const auto& kids = rec["children"];
    if (!kids.is_array() || kids.empty()) throw std::invalid_argument("children must be a nonempty array");
    for (const auto& kid : kids) spec.children.push_back(parse_node(kid, values));
  } else if (values != nullptr) {
    if (!rec.contains("value") || !rec["value"].is_number()) throw std::invalid_argument("every leaf needs a numeric value");
    values->push_back(rec["value"].get<double>());
  }
  return spec;
}

Tree build(const ordered_json& doc, std::vector<double>* values) {
  if (!doc.is_object() || !doc.contains("root")) throw std::invalid_argument("tree document needs a root record");
  const NodeSpec root = parse_node(doc["root"], values);
  const std::string kind = doc.value("kind", "general");
  if (kind == "dyadic") {
    const int depth = doc.at("depth").get<int>();
    Tree t = Tree::dyadic(depth);
    // The nested records must describe exactly the dyadic tree of that depth.
    const NodeSpec expected = t.to_spec();
    std::vector<std::pair<const NodeSpec*, const NodeSpec*>> stack{{&root, &expected}};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      if (a->measure != b->measure || a->children.size() != b->children.size()) {
        throw std::invalid_argument("records do not match the dyadic tree of the stated depth");
      }
      for (std::size_t i = 0; i < a->children.size(); ++i) stack.emplace_back(&a->children[i], &b->children[i]);
    }
    return t;
  }
  if (kind != "general") throw std::invalid_argument("unknown tree kind '" + kind + "'");
  return Tree::from_spec(root);
}

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed tree document: ") + e.what());
  }
}

}  // namespace

std::string serialize_tree(const Tree& tree, int indent) { return dump(tree, nullptr, indent); }

std::string serialize_step_function(const StepFunction& phi, int indent) { return dump(phi.tree(), &phi, indent); }

Tree parse_tree(const std::string& text) { return build(parse_json(text), nullptr); }

StepFunction parse_step_function(const std::string& text) {
  std::vector<double> values;
  Tree t = build(parse_json(text), &values);
  return {std::make_shared<const Tree>(std::move(t)), std::move(values)};
}

}  // namespace dyadic
