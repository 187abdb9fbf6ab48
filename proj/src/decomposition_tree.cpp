#include "forge/decomposition_tree.hpp"

#include <algorithm>

#include "forge/error.hpp"

namespace forge {

namespace {

constexpr std::pair<TreeKind, const char*> kKindNames[] = {
    {TreeKind::kDeletion, "deletion"},
    {TreeKind::kContraction, "contraction"},
    {TreeKind::kContractionDeletion, "contraction-deletion"},
    {TreeKind::kCStarPrincipal, "cstar-principal"},
    {TreeKind::kCStarGeneral, "cstar-general"},
    {TreeKind::kCStarDeletion, "cstar-deletion"},
};

constexpr std::pair<EdgeOp, const char*> kOpNames[] = {
    {EdgeOp::kNone, "none"},
    {EdgeOp::kDelete, "delete"},
    {EdgeOp::kContractElement, "contract-element"},
    {EdgeOp::kContractSubspace, "contract-subspace"},
};

}  // namespace

std::string tree_kind_name(TreeKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::string edge_op_name(EdgeOp op) {
  for (const auto& [o, name] : kOpNames)
    if (o == op) return name;
  return "unknown";
}

bool counts_vertices(TreeKind kind) {
  return kind == TreeKind::kDeletion || kind == TreeKind::kContraction ||
         kind == TreeKind::kContractionDeletion;
}

DecompositionTree::DecompositionTree(TreeKind kind) : kind_(kind) {
  nodes_.push_back(TreeNode{kNoParent, {}, EdgeOp::kNone, 0, {}, {}});
}

std::size_t DecompositionTree::add_child(std::size_t parent, EdgeOp op, std::size_t element,
                                         std::vector<Rational> generator) {
  const std::size_t id = nodes_.size();
  nodes_.push_back(TreeNode{parent, {}, op, element, std::move(generator), {}});
  nodes_[parent].children.push_back(id);
  return id;
}

void DecompositionTree::add_label(std::size_t v, std::size_t element) {
  auto& labels = nodes_[v].labels;
  labels.insert(std::upper_bound(labels.begin(), labels.end(), element), element);
}

std::size_t DecompositionTree::height() const {
  std::vector<std::size_t> level(nodes_.size(), 1);
  std::size_t best = 1;
  for (std::size_t v : preorder()) {
    if (nodes_[v].parent != kNoParent) level[v] = level[nodes_[v].parent] + 1;
    best = std::max(best, level[v]);
  }
  return best;
}

std::vector<std::size_t> DecompositionTree::preorder() const {
  std::vector<std::size_t> order;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto& ch = nodes_[v].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

ElementSet DecompositionTree::edge_elements_preorder() const {
  ElementSet out;
  for (auto v : preorder()) {
    const auto op = nodes_[v].op;
    if (op == EdgeOp::kDelete || op == EdgeOp::kContractElement) out.push_back(nodes_[v].element);
  }
  return out;
}

std::vector<std::vector<Rational>> DecompositionTree::generators_preorder() const {
  std::vector<std::vector<Rational>> out;
  for (auto v : preorder()) {
    const auto op = nodes_[v].op;
    if (op == EdgeOp::kContractElement || op == EdgeOp::kContractSubspace) {
      out.push_back(nodes_[v].generator);
    }
  }
  return out;
}

ElementSet DecompositionTree::subtree_elements(std::size_t v) const {
  ElementSet out;
  std::vector<std::size_t> stack{v};
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    const auto& n = nodes_[u];
    out.insert(out.end(), n.labels.begin(), n.labels.end());
    if (n.op == EdgeOp::kDelete || n.op == EdgeOp::kContractElement) out.push_back(n.element);
    stack.insert(stack.end(), n.children.begin(), n.children.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> DecompositionTree::all_labels() const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes_) {
    out.insert(out.end(), n.labels.begin(), n.labels.end());
    if (n.op == EdgeOp::kDelete || n.op == EdgeOp::kContractElement) out.push_back(n.element);
  }
  return out;
}

nlohmann::json DecompositionTree::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    const auto& n = nodes_[v];
    nlohmann::json j;
    j["id"] = v;
    j["parent"] = n.parent == kNoParent ? nlohmann::json(nullptr) : nlohmann::json(n.parent);
    j["labels"] = n.labels;
    if (n.op != EdgeOp::kNone) {
      j["edge"] = edge_op_name(n.op);
      if (n.op != EdgeOp::kContractSubspace) j["element"] = n.element;
      if (n.op != EdgeOp::kDelete) {
        nlohmann::json gen = nlohmann::json::array();
        for (const auto& q : n.generator) gen.push_back(to_string(q));
        j["generator"] = gen;
      }
    }
    nodes.push_back(std::move(j));
  }
  return {{"kind", tree_kind_name(kind_)}, {"height", height()}, {"depth", depth()},
          {"nodes", nodes}};
}

DecompositionTree DecompositionTree::from_json(const nlohmann::json& j) {
  try {
    const std::string kind_name = j.at("kind").get<std::string>();
    auto kind_it = std::find_if(std::begin(kKindNames), std::end(kKindNames),
                                [&](const auto& p) { return kind_name == p.second; });
    if (kind_it == std::end(kKindNames)) {
      throw Error(ErrorCode::kParseError, "unknown tree kind '" + kind_name + "'");
    }
    DecompositionTree t(kind_it->first);
    const auto& nodes = j.at("nodes");
    if (nodes.empty() || !nodes[0].at("parent").is_null()) {
      throw Error(ErrorCode::kParseError, "node 0 must be the root");
    }
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      const auto& n = nodes[v];
      if (v > 0) {
        const auto parent = n.at("parent").get<std::size_t>();
        if (parent >= v) throw Error(ErrorCode::kParseError, "parents must precede children");
        const std::string op_name = n.at("edge").get<std::string>();
        auto op_it = std::find_if(std::begin(kOpNames), std::end(kOpNames),
                                  [&](const auto& p) { return op_name == p.second; });
        if (op_it == std::end(kOpNames) || op_it->first == EdgeOp::kNone) {
          throw Error(ErrorCode::kParseError, "unknown edge operation '" + op_name + "'");
        }
        std::vector<Rational> gen;
        if (n.contains("generator")) {
          for (const auto& s : n.at("generator")) gen.push_back(parse_rational(s.get<std::string>()));
        }
        t.add_child(parent, op_it->first, n.value("element", std::size_t{0}), std::move(gen));
      }
      for (const auto& e : n.at("labels")) t.add_label(v, e.get<std::size_t>());
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

}  // namespace forge
