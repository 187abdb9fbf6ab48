#include "forge/instances.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "forge/error.hpp"

namespace forge {
namespace {

std::size_t find(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

void gn_build(std::size_t n, GnInstance& out, std::size_t& r, std::size_t& b) {
  const std::size_t base = out.num_vertices;
  if (n == 1) {
    out.num_vertices += 2;
    r = base;
    b = base + 1;
    out.edges.emplace_back(r, b);
    out.edges.emplace_back(r, b);
    return;
  }
  out.num_vertices += 2 * n;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const std::size_t u = base + i, v = base + (i + 1) % (2 * n);
    out.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  r = base;
  b = base + n;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t cr = 0, cb = 0;
    gn_build(n - 1, out, cr, cb);
    out.edges.emplace_back(r, cr);
    out.edges.emplace_back(b, cb);
  }
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incidences(const GnInstance& g) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(g.num_vertices);  // (neighbor, edge)
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    adj[g.edges[e].first].emplace_back(g.edges[e].second, e);
    adj[g.edges[e].second].emplace_back(g.edges[e].first, e);
  }
  return adj;
}

}  // namespace

LabeledGraphMatroid matroid_from_graph(const Graph& g, const FieldSpec& field) {
  const std::size_t n = g.num_vertices();
  RatMatrix rep(n, n + g.num_edges());
  std::vector<GraphElement> elements;
  for (std::size_t w = 0; w < n; ++w) {
    rep(w, w) = 1;
    elements.push_back({true, w, w});
  }
  for (std::size_t k = 0; k < g.num_edges(); ++k) {
    const auto [u, v] = g.edges()[k];
    rep(u, n + k) = 1;
    rep(v, n + k) = -1;
    elements.push_back({false, u, v});
  }
  return {g, std::move(elements), matroid_of(rep, field)};
}

void check_bipartition(const Graph& g, const Bipartition& parts) {
  std::vector<int> side(g.num_vertices(), -1);
  auto mark = [&](const std::vector<std::size_t>& vs, int s) {
    for (auto v : vs) {
      if (v >= g.num_vertices() || side[v] != -1)
        throw Error(ErrorCode::kNotBipartition, "vertex " + std::to_string(v) + " out of range or repeated");
      side[v] = s;
    }
  };
  mark(parts.x, 0);
  mark(parts.y, 1);
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (side[v] == -1) throw Error(ErrorCode::kNotBipartition, "vertex " + std::to_string(v) + " in no part");
  for (const auto& [u, v] : g.edges())
    if (side[u] == side[v])
      throw Error(ErrorCode::kNotBipartition, "edge " + std::to_string(u) + "-" + std::to_string(v) + " inside a part");
}

Graph bipartite_completion(const Graph& g, const Bipartition& parts) {
  check_bipartition(g, parts);
  Graph out(g.num_vertices(), g.labels());
  for (const auto& [u, v] : g.edges()) out.add_edge(u, v);
  for (const auto* part : {&parts.x, &parts.y})
    for (std::size_t i = 0; i < part->size(); ++i)
      for (std::size_t j = i + 1; j < part->size(); ++j) out.add_edge((*part)[i], (*part)[j]);
  return out;
}

Graph quotient_graph(const Graph& g, const std::vector<std::vector<Rational>>& generators,
                     const FieldSpec& field) {
  const std::size_t n = g.num_vertices();
  for (const auto& v : generators)
    if (v.size() != n) throw Error(ErrorCode::kDimensionMismatch, "generator length differs from |V(G)|");
  const std::size_t dim = vectors_rank(field, generators, n);
  auto unit = [n](std::size_t w) {
    std::vector<Rational> e(n);
    e[w] = 1;
    return e;
  };
  std::vector<bool> in_w(n, false);
  for (std::size_t w = 0; w < n; ++w) {
    auto vs = generators;
    vs.push_back(unit(w));
    in_w[w] = vectors_rank(field, vs, n) == dim;
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<bool> in_f(g.num_edges(), false);
  for (std::size_t k = 0; k < g.num_edges(); ++k) {
    const auto [u, v] = g.edges()[k];
    if (in_w[u] || in_w[v]) continue;
    auto vs = generators;
    vs.push_back(unit(u));
    vs.push_back(unit(v));
    // Neither unit vector lies in the span, so a one-dimensional meet is
    // spanned by some e_u + a e_v with a != 0.
    if (vectors_rank(field, vs, n) != dim + 1) continue;
    in_f[k] = true;
  }
  std::vector<std::size_t> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.edges()[a] < g.edges()[b]; });
  for (auto k : order) {
    if (!in_f[k]) continue;
    const std::size_t a = find(parent, g.edges()[k].first), b = find(parent, g.edges()[k].second);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> index(n, n);
  std::vector<std::string> labels;
  std::size_t count = 0;
  for (std::size_t w = 0; w < n; ++w) {
    if (in_w[w]) continue;
    const std::size_t root = find(parent, w);
    if (index[root] == n) {
      index[root] = count++;
      labels.push_back(g.label(w));
    }
    index[w] = index[root];
  }
  Graph out(count, labels);
  for (const auto& [u, v] : g.edges()) {
    if (in_w[u] || in_w[v] || index[u] == index[v]) continue;
    out.add_edge(index[u], index[v]);
  }
  return out;
}

std::size_t nonloop_components(const LinearMatroid& m) {
  std::size_t count = 0;
  for (const auto& c : components(m))
    if (c.size() > 1 || !m.is_loop(c[0])) ++count;
  return count;
}

HardnessInstance hardness_instance(const Graph& g, const Bipartition& parts, std::size_t k,
                                   const FieldSpec& field, HardnessVariant which) {
  const Graph completed = bipartite_completion(g, parts);
  const std::size_t total = parts.x.size() + parts.y.size();
  if (k > total) throw Error(ErrorCode::kBadParams, "k larger than the graph");
  const LinearMatroid base = matroid_from_graph(completed, field).matroid;
  const std::size_t clones = completed.num_vertices() + 1;
  switch (which) {
    case HardnessVariant::kCStar:
      return {base, DepthParam::kCStar, total - k};
    case HardnessVariant::kCd2M:
      return {clone_k(base, 2), DepthParam::kContraction, total - k + 1};
    case HardnessVariant::kCddClone:
      return {clone_k(base, clones), DepthParam::kContractionDeletion, total - k + 1};
    case HardnessVariant::kCsddClone:
      return {clone_k(base, clones), DepthParam::kCStarDeletion, total - k};
    case HardnessVariant::kDdDual:
      return {dualize(clone_k(base, 2)), DepthParam::kDeletion, total - k + 1};
  }
  throw Error(ErrorCode::kBadParams, "unknown hardness variant");
}

bool balanced_independent_set(const Graph& g, const Bipartition& parts, std::size_t k) {
  check_bipartition(g, parts);
  if (k == 0) return true;
  const auto& x = parts.x;
  const auto& y = parts.y;
  if (k > x.size() || k > y.size()) return false;
  // Choose k of x; the y-vertices with no neighbor among them must number k.
  std::vector<bool> pick(x.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::size_t free_y = 0;
    for (auto yv : y) {
      bool blocked = false;
      for (std::size_t i = 0; i < x.size() && !blocked; ++i)
        if (pick[i] && g.has_edge(x[i], yv)) blocked = true;
      if (!blocked) ++free_y;
    }
    if (free_y >= k) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

LinearMatroid GnInstance::matroid(const FieldSpec& field) const {
  RatMatrix rep(num_vertices, edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    rep(edges[k].first, k) = 1;
    rep(edges[k].second, k) = -1;
  }
  return matroid_of(rep, field);
}

GnInstance gn_family(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::kBadParams, "G_n needs n >= 1");
  GnInstance out;
  out.n = n;
  gn_build(n, out, out.r, out.b);
  return out;
}

std::vector<std::size_t> rb_path_lengths(const GnInstance& g) {
  const auto adj = incidences(g);
  std::vector<bool> seen(g.num_vertices, false);
  std::vector<std::size_t> out;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t v, std::size_t len) {
    if (v == g.b) {
      out.push_back(len);
      return;
    }
    seen[v] = true;
    for (auto [w, e] : adj[v])
      if (!seen[w]) walk(w, len + 1);
    seen[v] = false;
  };
  walk(g.r, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> cycle_lengths(const GnInstance& g) {
  const auto adj = incidences(g);
  std::set<std::vector<std::size_t>> cycles;
  std::vector<bool> seen(g.num_vertices, false);
  std::vector<std::size_t> path;  // edge ids
  // Cycles whose smallest vertex is s, walking only through larger vertices.
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t s, std::size_t v) {
    for (auto [w, e] : adj[v]) {
      if (!path.empty() && e == path.back()) continue;
      if (w == s && !path.empty()) {
        auto c = path;
        c.push_back(e);
        std::sort(c.begin(), c.end());
        cycles.insert(std::move(c));
        continue;
      }
      if (w < s || seen[w]) continue;
      seen[w] = true;
      path.push_back(e);
      walk(s, w);
      path.pop_back();
      seen[w] = false;
    }
  };
  for (std::size_t s = 0; s < g.num_vertices; ++s) {
    seen[s] = true;
    walk(s, s);
    seen[s] = false;
  }
  std::vector<std::size_t> out;
  for (const auto& c : cycles) out.push_back(c.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace forge
