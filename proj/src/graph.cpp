#include "forge/graph.hpp"

#include <algorithm>

#include "forge/error.hpp"

namespace forge {

Graph::Graph(std::size_t n) : adjacency_(n), labels_(n) {
  for (std::size_t v = 0; v < n; ++v) labels_[v] = std::to_string(v);
}

Graph::Graph(std::size_t n, std::vector<std::string> labels)
    : adjacency_(n), labels_(std::move(labels)) {
  if (labels_.size() != n) throw Error(ErrorCode::kBadParams, "label count differs from vertex count");
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= num_vertices() || v >= num_vertices()) {
    throw Error(ErrorCode::kBadParams, "edge endpoint out of range");
  }
  if (u == v) throw Error(ErrorCode::kBadParams, "loop at vertex " + std::to_string(u));
  if (has_edge(u, v)) return;
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  edges_.emplace_back(std::min(u, v), std::max(u, v));
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  const auto& adj = adjacency_[u];
  return std::find(adj.begin(), adj.end(), v) != adj.end();
}

std::vector<std::vector<std::size_t>> Graph::components() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(num_vertices(), false);
  for (std::size_t s = 0; s < num_vertices(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (auto w : adjacency_[comp[i]]) {
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Graph Graph::induced(const std::vector<std::size_t>& keep) const {
  std::vector<std::size_t> index(num_vertices(), static_cast<std::size_t>(-1));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    index[keep[i]] = i;
    labels.push_back(labels_[keep[i]]);
  }
  Graph g(keep.size(), std::move(labels));
  for (const auto& [u, v] : edges_) {
    if (index[u] != static_cast<std::size_t>(-1) && index[v] != static_cast<std::size_t>(-1)) {
      g.add_edge(index[u], index[v]);
    }
  }
  return g;
}

bool RootedForest::well_formed() const {
  const std::size_t n = parent_.size();
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t cur = v;
    for (std::size_t steps = 0; cur != kNoParent; ++steps) {
      if (cur >= n || steps > n) return false;
      cur = parent_[cur];
    }
  }
  return true;
}

std::size_t RootedForest::height() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    std::size_t h = 0;
    for (std::size_t cur = v; cur != kNoParent; cur = parent_[cur]) ++h;
    best = std::max(best, h);
  }
  return best;
}

bool RootedForest::is_ancestor(std::size_t ancestor, std::size_t v) const {
  for (std::size_t cur = v; cur != kNoParent; cur = parent_[cur]) {
    if (cur == ancestor) return true;
  }
  return false;
}

Graph primal_graph(const RatMatrix& a) {
  Graph g(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0) support.push_back(c);
    for (std::size_t i = 0; i < support.size(); ++i)
      for (std::size_t j = i + 1; j < support.size(); ++j) g.add_edge(support[i], support[j]);
  }
  return g;
}

Graph dual_graph(const RatMatrix& a) {
  Graph g(a.rows());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    std::vector<std::size_t> support;
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (a(r, c) != 0) support.push_back(r);
    for (std::size_t i = 0; i < support.size(); ++i)
      for (std::size_t j = i + 1; j < support.size(); ++j) g.add_edge(support[i], support[j]);
  }
  return g;
}

Graph incidence_graph(const RatMatrix& a) {
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < a.rows(); ++r) labels.push_back("r" + std::to_string(r));
  for (std::size_t c = 0; c < a.cols(); ++c) labels.push_back("c" + std::to_string(c));
  Graph g(a.rows() + a.cols(), std::move(labels));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0) g.add_edge(r, a.rows() + c);
  return g;
}

bool forest_certifies(const Graph& g, const RootedForest& f) {
  if (f.size() != g.num_vertices()) {
    throw Error(ErrorCode::kVertexMismatch, "forest has " + std::to_string(f.size()) +
                                                " vertices, graph has " +
                                                std::to_string(g.num_vertices()));
  }
  if (!f.well_formed()) return false;
  for (const auto& [u, v] : g.edges()) {
    if (!f.is_ancestor(u, v) && !f.is_ancestor(v, u)) return false;
  }
  return true;
}

std::size_t primal_tree_depth(const RatMatrix& a) { return *tree_depth(primal_graph(a)).value; }
std::size_t dual_tree_depth(const RatMatrix& a) { return *tree_depth(dual_graph(a)).value; }
std::size_t incidence_tree_depth(const RatMatrix& a) {
  return *tree_depth(incidence_graph(a)).value;
}

}  // namespace forge
