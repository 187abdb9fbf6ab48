#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forge/matrix.hpp"

namespace forge {

/// Simple loopless undirected graph on vertices 0..n-1 with optional labels.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;  // first < second

  Graph() = default;
  explicit Graph(std::size_t n);
  Graph(std::size_t n, std::vector<std::string> labels);

  std::size_t num_vertices() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  /// Adds uv; duplicates are ignored.  Throws Error(kBadParams) on loops or
  /// out-of-range endpoints.
  void add_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const;

  /// Edges in insertion order, each with first < second.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }
  const std::string& label(std::size_t v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Vertex sets of the connected components, each sorted, ordered by
  /// smallest vertex.
  std::vector<std::vector<std::size_t>> components() const;

  /// Induced subgraph; vertex i of the result is keep[i].
  Graph induced(const std::vector<std::size_t>& keep) const;

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

/// Rooted forest over the vertices 0..n-1 of some graph.
class RootedForest {
 public:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  RootedForest() = default;
  explicit RootedForest(std::vector<std::size_t> parent) : parent_(std::move(parent)) {}

  std::size_t size() const noexcept { return parent_.size(); }
  std::size_t parent(std::size_t v) const { return parent_[v]; }
  const std::vector<std::size_t>& parents() const noexcept { return parent_; }

  /// Whether the parent map is acyclic with in-range parents.
  bool well_formed() const;
  /// Maximum number of vertices on a root-to-leaf path.
  std::size_t height() const;
  bool is_ancestor(std::size_t ancestor, std::size_t v) const;

 private:
  std::vector<std::size_t> parent_;
};

/// Columns as vertices; i ~ j iff some row is nonzero in both.
Graph primal_graph(const RatMatrix& a);
/// Rows as vertices; i ~ j iff some column is nonzero in both.
Graph dual_graph(const RatMatrix& a);
/// Bipartite: rows are vertices 0..m-1, column j is vertex m+j.
Graph incidence_graph(const RatMatrix& a);

struct TreeDepthResult {
  std::optional<std::size_t> value;  // empty when the budget was exceeded
  RootedForest witness;              // meaningful only when value is set
  bool exceeds_budget() const { return !value.has_value(); }
};

/// Exact tree-depth by memoized search over vertex subsets.  With a budget,
/// reports ExceedsBudget (empty value) as soon as td > budget is certain.
/// Throws Error(kTooLarge) above 64 vertices.
TreeDepthResult tree_depth(const Graph& g, std::optional<std::size_t> budget = std::nullopt);

/// Whether every edge of g joins an ancestor-descendant pair of f.  Throws
/// Error(kVertexMismatch) when the vertex counts differ.
bool forest_certifies(const Graph& g, const RootedForest& f);

std::size_t primal_tree_depth(const RatMatrix& a);
std::size_t dual_tree_depth(const RatMatrix& a);
std::size_t incidence_tree_depth(const RatMatrix& a);

}  // namespace forge
