#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/matroid.hpp"

namespace forge {

enum class TreeKind {
  kDeletion,
  kContraction,
  kContractionDeletion,
  kCStarPrincipal,
  kCStarGeneral,
  kCStarDeletion,
};

/// Operation on the edge from a vertex to its parent.
enum class EdgeOp { kNone, kDelete, kContractElement, kContractSubspace };

std::string tree_kind_name(TreeKind kind);
std::string edge_op_name(EdgeOp op);

/// Whether the tree's value is its height in vertices (deletion-style
/// kinds) rather than its depth in edges (contraction* kinds).
bool counts_vertices(TreeKind kind);

struct TreeNode {
  std::size_t parent;
  ElementSet labels;               // elements finished at this vertex
  EdgeOp op = EdgeOp::kNone;
  std::size_t element = 0;         // for kDelete / kContractElement
  std::vector<Rational> generator; // for kContractElement / kContractSubspace
  std::vector<std::size_t> children;
};

/// Rooted tree whose vertex 0 is the root.
class DecompositionTree {
 public:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  explicit DecompositionTree(TreeKind kind = TreeKind::kDeletion);

  TreeKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const TreeNode& node(std::size_t v) const { return nodes_[v]; }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }

  std::size_t add_child(std::size_t parent, EdgeOp op, std::size_t element,
                        std::vector<Rational> generator = {});
  void add_label(std::size_t v, std::size_t element);

  /// Maximum number of vertices on a root-to-leaf path.
  std::size_t height() const;
  /// Maximum number of edges on a root-to-leaf path.
  std::size_t depth() const { return height() - 1; }
  /// height() or depth() according to the kind.
  std::size_t value() const { return counts_vertices(kind_) ? height() : depth(); }
  std::size_t edge_count() const { return nodes_.size() - 1; }

  std::vector<std::size_t> preorder() const;
  /// Elements on element-labelled edges, in preorder.
  ElementSet edge_elements_preorder() const;
  /// Generators of the edges in preorder (element edges included).
  std::vector<std::vector<Rational>> generators_preorder() const;
  /// Vertex labels plus element edge labels inside the subtree of v,
  /// including the label of the edge into v.
  ElementSet subtree_elements(std::size_t v) const;
  /// Every vertex label and element edge label, with repetitions.
  std::vector<std::size_t> all_labels() const;

  nlohmann::json to_json() const;
  /// Throws Error(kParseError) on malformed input.
  static DecompositionTree from_json(const nlohmann::json& j);

 private:
  TreeKind kind_;
  std::vector<TreeNode> nodes_;
};

}  // namespace forge
