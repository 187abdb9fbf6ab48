#pragma once

// Matroids built from graphs: the vertex-edge matroid M_F(G), quotients of a
// graph by a subspace, the reduction from balanced independent sets, and the
// recursive family G_n whose cycle matroids have short circuits but large
// contraction-depth.

#include <cstddef>
#include <utility>
#include <vector>

#include "forge/depth.hpp"
#include "forge/graph.hpp"
#include "forge/matroid.hpp"

namespace forge {

struct GraphElement {
  bool is_vertex = true;
  std::size_t u = 0;  // the vertex, or the first endpoint
  std::size_t v = 0;  // second endpoint of an edge
};

/// Element w (a vertex) is e_w, element ww' (an edge, u < v) is e_u - e_v.
/// Vertices come first, then edges in the graph's edge order.
struct LabeledGraphMatroid {
  Graph graph;
  std::vector<GraphElement> elements;
  LinearMatroid matroid;
};

LabeledGraphMatroid matroid_from_graph(const Graph& g, const FieldSpec& field);

struct Bipartition {
  std::vector<std::size_t> x;
  std::vector<std::size_t> y;
};

/// Throws Error(kNotBipartition) unless x and y partition the vertices and
/// every edge joins x to y.
void check_bipartition(const Graph& g, const Bipartition& parts);

/// G plus all edges inside x and inside y.
Graph bipartite_completion(const Graph& g, const Bipartition& parts);

/// Deletes the vertices w with e_w in span(generators), then contracts a
/// lexicographically first spanning forest of the edges ww' for which the
/// span holds some e_w + a e_w', a != 0.  Vertices of the result are the
/// contracted classes ordered by their smallest original vertex.
Graph quotient_graph(const Graph& g, const std::vector<std::vector<Rational>>& generators,
                     const FieldSpec& field);

/// Number of components of M that contain a non-loop element.
std::size_t nonloop_components(const LinearMatroid& m);

enum class HardnessVariant { kCStar, kCd2M, kCddClone, kCsddClone, kDdDual };

struct HardnessInstance {
  LinearMatroid matroid;
  DepthParam param;
  std::size_t threshold;  // a balanced set exists iff param(matroid) <= threshold
};

HardnessInstance hardness_instance(const Graph& g, const Bipartition& parts, std::size_t k,
                                   const FieldSpec& field, HardnessVariant which);

/// Whether some k vertices of x and k vertices of y have no edges between
/// them, by exhaustive search.
bool balanced_independent_set(const Graph& g, const Bipartition& parts, std::size_t k);

/// Multigraph with distinguished vertices r and b.
struct GnInstance {
  std::size_t n = 0;
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t r = 0;
  std::size_t b = 0;

  /// Cycle matroid: edge uv is e_u - e_v.
  LinearMatroid matroid(const FieldSpec& field = FieldSpec::rationals()) const;
};

GnInstance gn_family(std::size_t n);

/// Lengths of all simple r-b paths.
std::vector<std::size_t> rb_path_lengths(const GnInstance& g);

/// Lengths of all cycles (parallel edges give cycles of length two).
std::vector<std::size_t> cycle_lengths(const GnInstance& g);

}  // namespace forge
