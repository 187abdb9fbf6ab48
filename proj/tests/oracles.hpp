#pragma once

// Brute-force reference implementations used only by the tests.  They work
// from first definitions (rank tables, circuits, vertex-removal recursion)
// and share no code with the library beyond the matrix and rational types.

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using Mask = std::uint32_t;

inline Mask bit(std::size_t i) { return Mask{1} << i; }

// ---------------------------------------------------------------------------
// Tree-depth straight from the recursive definition.

inline std::size_t td(const std::vector<Mask>& adj, Mask s) {
  if (s == 0) return 0;
  // Component of the lowest vertex.
  Mask comp = s & (~s + 1), grow = comp;
  while (grow) {
    Mask next = 0;
    for (std::size_t v = 0; v < adj.size(); ++v)
      if (grow & bit(v)) next |= adj[v] & s & ~comp;
    comp |= next;
    grow = next;
  }
  if (comp != s) return std::max(td(adj, comp), td(adj, s & ~comp));
  if (std::popcount(s) == 1) return 1;
  std::size_t best = 64;
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (s & bit(v)) best = std::min(best, 1 + td(adj, s & ~bit(v)));
  return best;
}

inline std::size_t td(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<Mask> adj(n, 0);
  for (auto [u, v] : edges) {
    adj[u] |= bit(v);
    adj[v] |= bit(u);
  }
  return td(adj, n == 32 ? ~Mask{0} : bit(n) - 1);
}

// ---------------------------------------------------------------------------
// Matroids as rank tables.

/// Rank of a set of rational vectors by fraction-free elimination.
inline std::size_t rank_of_vectors(std::vector<std::vector<mpq_class>> rows) {
  std::size_t r = 0;
  const std::size_t dim = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const mpq_class f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < dim; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

/// Same over GF(p), entries given as integers.
inline std::size_t rank_mod_p(std::vector<std::vector<long>> rows, long p) {
  auto md = [p](long x) { return ((x % p) + p) % p; };
  auto inv = [&](long a) {
    long r = 1, b = md(a), e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t r = 0;
  const std::size_t dim = rows.empty() ? 0 : rows[0].size();
  for (auto& row : rows)
    for (auto& x : row) x = md(x);
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const long iv = inv(rows[r][c]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const long f = rows[i][c] * iv % p;
      for (std::size_t k = c; k < dim; ++k) rows[i][k] = md(rows[i][k] - f * rows[r][k]);
    }
    ++r;
  }
  return r;
}

/// Matroid on elements 0..n-1 given by its full rank table.
struct RankTable {
  std::size_t n = 0;
  std::vector<std::size_t> rank;  // indexed by subset mask

  std::size_t r(Mask s) const { return rank[s]; }
  Mask ground() const { return n == 32 ? ~Mask{0} : bit(n) - 1; }
};

/// Rank table of the columns of an integer matrix over Q (p = 0) or GF(p).
inline RankTable rank_table(const std::vector<std::vector<long>>& a, std::size_t cols, long p = 0) {
  RankTable t;
  t.n = cols;
  t.rank.resize(std::size_t{1} << cols);
  for (Mask s = 0; s < (Mask{1} << cols); ++s) {
    if (p == 0) {
      std::vector<std::vector<mpq_class>> vs;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!(s & bit(j))) continue;
        std::vector<mpq_class> v;
        for (const auto& row : a) v.emplace_back(row[j]);
        vs.push_back(std::move(v));
      }
      t.rank[s] = rank_of_vectors(std::move(vs));
    } else {
      std::vector<std::vector<long>> vs;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!(s & bit(j))) continue;
        std::vector<long> v;
        for (const auto& row : a) v.push_back(row[j]);
        vs.push_back(std::move(v));
      }
      t.rank[s] = rank_mod_p(std::move(vs), p);
    }
  }
  return t;
}

/// A minor M|S / C of a rank table: rank(X) = r(X u C) - r(C).
struct Minor {
  const RankTable* m;
  Mask s;
  Mask c;
  std::size_t r(Mask x) const { return m->r(x | c) - m->r(c); }
};

/// Circuits of a minor as masks.
inline std::vector<Mask> circuits(const Minor& mn) {
  std::vector<Mask> out;
  for (Mask x = mn.s;; x = (x - 1) & mn.s) {
    if (x != 0 && mn.r(x) + 1 == static_cast<std::size_t>(std::popcount(x))) {
      bool minimal = true;
      for (std::size_t e = 0; e < 32 && minimal; ++e)
        if ((x & bit(e)) && mn.r(x & ~bit(e)) != static_cast<std::size_t>(std::popcount(x)) - 1)
          minimal = false;
      if (minimal) out.push_back(x);
    }
    if (x == 0) break;
  }
  return out;
}

/// Components via the common-circuit relation, closed transitively.
inline std::vector<Mask> components(const Minor& mn) {
  const auto cs = circuits(mn);
  std::vector<Mask> comps;
  for (std::size_t e = 0; e < 32; ++e) {
    if (!(mn.s & bit(e))) continue;
    Mask comp = bit(e);
    bool grew = true;
    while (grew) {
      grew = false;
      for (Mask c : cs) {
        if ((c & comp) && (c & ~comp)) {
          comp |= c;
          grew = true;
        }
      }
    }
    if (std::none_of(comps.begin(), comps.end(), [&](Mask m) { return m & bit(e); }))
      comps.push_back(comp);
  }
  return comps;
}

enum class Kind { kDeletion, kContraction, kContractionDeletion };

inline std::size_t depth(const RankTable& m, Mask s, Mask c, Kind kind,
                         std::map<std::pair<Mask, Mask>, std::size_t>& memo) {
  if (auto it = memo.find({s, c}); it != memo.end()) return it->second;
  const Minor mn{&m, s, c};
  std::size_t best = 64;
  if (std::popcount(s) == 1) {
    best = 1;
  } else if (const auto comps = components(mn); comps.size() > 1) {
    best = 0;
    for (Mask comp : comps) best = std::max(best, depth(m, comp, c, kind, memo));
  } else {
    for (std::size_t e = 0; e < m.n; ++e) {
      if (!(s & bit(e))) continue;
      if (kind != Kind::kContraction) best = std::min(best, 1 + depth(m, s & ~bit(e), c, kind, memo));
      if (kind != Kind::kDeletion) best = std::min(best, 1 + depth(m, s & ~bit(e), c | bit(e), kind, memo));
    }
  }
  memo[{s, c}] = best;
  return best;
}

inline std::size_t depth(const RankTable& m, Mask s, Mask c, Kind kind) {
  std::map<std::pair<Mask, Mask>, std::size_t> memo;
  return depth(m, s, c, kind, memo);
}

// ---------------------------------------------------------------------------
// Contraction*-depth from the rooted-tree definition: the least depth of a
// rooted tree with exactly r(M) edges and a map f from elements to leaves
// such that every X is covered by at least r(X) edges on root paths to f(X).

inline std::size_t cstar_depth(const RankTable& m) {
  const std::size_t r = m.r(m.ground());
  if (r == 0) return 0;
  std::size_t best = r;  // a path always works
  // Trees on vertices 0..r, parent[i] < i.
  std::vector<std::size_t> parent(r + 1, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i > r) {
      std::vector<std::size_t> level(r + 1, 0);
      std::vector<bool> has_child(r + 1, false);
      for (std::size_t v = 1; v <= r; ++v) {
        level[v] = level[parent[v]] + 1;
        has_child[parent[v]] = true;
      }
      const std::size_t d = *std::max_element(level.begin(), level.end());
      if (d >= best) return;
      std::vector<std::size_t> leaves;
      for (std::size_t v = 0; v <= r; ++v)
        if (!has_child[v]) leaves.push_back(v);
      // Edge set on the root path of each leaf, as a mask over child vertices.
      std::vector<Mask> path(leaves.size(), 0);
      for (std::size_t l = 0; l < leaves.size(); ++l)
        for (std::size_t v = leaves[l]; v != 0; v = parent[v]) path[l] |= bit(v);
      std::vector<std::size_t> f(m.n, 0);
      while (true) {
        bool ok = true;
        for (Mask x = 1; x <= m.ground() && ok; ++x) {
          Mask edges = 0;
          for (std::size_t e = 0; e < m.n; ++e)
            if (x & bit(e)) edges |= path[f[e]];
          if (static_cast<std::size_t>(std::popcount(edges)) < m.r(x)) ok = false;
        }
        if (ok) {
          best = d;
          return;
        }
        std::size_t k = 0;
        while (k < m.n && f[k] + 1 == leaves.size()) f[k++] = 0;
        if (k == m.n) break;
        ++f[k];
      }
      return;
    }
    for (std::size_t p = 0; p < i; ++p) {
      parent[i] = p;
      rec(i + 1);
    }
  };
  rec(1);
  return best;
}

// ---------------------------------------------------------------------------
// Contraction*-(deletion-)depth over GF(p) straight from the recursion:
// rank 0 -> 0, single non-loop -> 1, disconnected -> max over components,
// else 1 + min over deleting an element (optional) and contracting any line.
// Elements are integer vectors; contracted lines are kept in `con`.

struct VecMinor {
  long p = 2;
  std::vector<std::vector<long>> live;
  std::vector<std::vector<long>> con;

  std::size_t r(const std::vector<std::size_t>& ids) const {
    std::vector<std::vector<long>> rows = con;
    for (auto i : ids) rows.push_back(live[i]);
    return rank_mod_p(rows, p) - rank_mod_p(con, p);
  }
};

/// Reduced echelon rows of a list of vectors mod p, zero rows dropped.
inline std::vector<std::vector<long>> rref_mod_p(std::vector<std::vector<long>> rows, long p) {
  auto md = [p](long x) { return ((x % p) + p) % p; };
  auto inv = [&](long a) {
    for (long b = 1; b < p; ++b)
      if (md(a * b) == 1) return b;
    return 0L;
  };
  for (auto& row : rows)
    for (auto& x : row) x = md(x);
  std::size_t r = 0;
  const std::size_t dim = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const long iv = inv(rows[r][c]);
    for (auto& x : rows[r]) x = md(x * iv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const long f = rows[i][c];
      for (std::size_t k = 0; k < dim; ++k) rows[i][k] = md(rows[i][k] - f * rows[r][k]);
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

using CStarMemo = std::map<std::pair<std::vector<std::vector<long>>, std::vector<std::vector<long>>>, std::size_t>;

inline std::size_t cstar_rec(const VecMinor& m, bool deletions, CStarMemo& memo);

inline std::size_t cstar_rec(const VecMinor& m, bool deletions) {
  CStarMemo memo;
  return cstar_rec(m, deletions, memo);
}

inline std::size_t cstar_rec_raw(const VecMinor& m, bool deletions, CStarMemo& memo);

// Memoized on the live vectors (as a multiset) and the contracted span.
inline std::size_t cstar_rec(const VecMinor& m, bool deletions, CStarMemo& memo) {
  auto live = m.live;
  for (auto& v : live)
    for (auto& x : v) x = ((x % m.p) + m.p) % m.p;
  std::sort(live.begin(), live.end());
  auto key = std::make_pair(std::move(live), rref_mod_p(m.con, m.p));
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const std::size_t v = cstar_rec_raw(m, deletions, memo);
  memo.emplace(std::move(key), v);
  return v;
}

inline std::size_t cstar_rec_raw(const VecMinor& m, bool deletions, CStarMemo& memo) {
  VecMinor s{m.p, {}, m.con};
  for (std::size_t i = 0; i < m.live.size(); ++i)
    if (m.r({i}) > 0) s.live.push_back(m.live[i]);
  const std::size_t n = s.live.size();
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  const std::size_t rank = s.r(all);
  if (rank == 0) return 0;
  if (deletions && n == 1) return 1;
  // Components: union of circuits sharing elements.
  auto ids_of = [&](Mask x) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
      if (x & bit(i)) out.push_back(i);
    return out;
  };
  std::vector<Mask> circ;
  for (Mask x = 1; x < bit(n); ++x) {
    const auto ids = ids_of(x);
    if (s.r(ids) + 1 != ids.size()) continue;
    bool minimal = true;
    for (std::size_t k = 0; k < ids.size() && minimal; ++k) {
      auto less = ids;
      less.erase(less.begin() + static_cast<long>(k));
      if (s.r(less) != less.size()) minimal = false;
    }
    if (minimal) circ.push_back(x);
  }
  Mask comp = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (Mask c : circ)
      if ((c & comp) && (c & ~comp)) {
        comp |= c;
        grew = true;
      }
  }
  if (comp != bit(n) - 1) {
    VecMinor a{s.p, {}, s.con}, b{s.p, {}, s.con};
    for (std::size_t i = 0; i < n; ++i) (comp & bit(i) ? a : b).live.push_back(s.live[i]);
    return std::max(cstar_rec(a, deletions, memo), cstar_rec(b, deletions, memo));
  }
  std::size_t best = rank;  // contracting a basis one line at a time
  if (deletions) {
    for (std::size_t i = 0; i < n; ++i) {
      VecMinor d = s;
      d.live.erase(d.live.begin() + static_cast<long>(i));
      best = std::min(best, 1 + cstar_rec(d, deletions, memo));
    }
  }
  const std::size_t dim = s.live[0].size();
  std::vector<long> w(dim, 0);
  while (true) {
    std::size_t k = 0;
    while (k < dim && w[k] == s.p - 1) w[k++] = 0;
    if (k == dim) break;
    ++w[k];
    // One representative per line: first nonzero entry equal to 1.
    std::size_t lead = 0;
    while (w[lead] == 0) ++lead;
    if (w[lead] != 1) continue;
    VecMinor t = s;
    t.con.push_back(w);
    const std::size_t in_con = rank_mod_p(t.con, s.p) - rank_mod_p(s.con, s.p);
    if (in_con == 0) continue;
    // w must lie in the span of the live elements.
    auto with = s.con;
    for (const auto& v : s.live) with.push_back(v);
    const std::size_t span = rank_mod_p(with, s.p);
    with.push_back(w);
    if (rank_mod_p(with, s.p) != span) continue;
    if (best <= 1) break;
    best = std::min(best, 1 + cstar_rec(t, deletions, memo));
  }
  return best;
}

inline std::size_t csd_mod_p(const std::vector<std::vector<long>>& a, std::size_t cols, long p) {
  VecMinor m{p, {}, {}};
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<long> v;
    for (const auto& row : a) v.push_back(row[j]);
    m.live.push_back(v);
  }
  return cstar_rec(m, false);
}

inline std::size_t csdd_mod_p(const std::vector<std::vector<long>>& a, std::size_t cols, long p) {
  VecMinor m{p, {}, {}};
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<long> v;
    for (const auto& row : a) v.push_back(row[j]);
    m.live.push_back(v);
  }
  return cstar_rec(m, true);
}

// ---------------------------------------------------------------------------
// Integer kernel points in a box, for Graver cross-checks.

inline bool conformal_leq(const std::vector<long>& x, const std::vector<long>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    if ((x[i] > 0) != (y[i] > 0) || std::labs(x[i]) > std::labs(y[i]) || y[i] == 0) return false;
  }
  return true;
}

/// All nonzero integer x with A x = 0 and |x_i| <= b, by full enumeration.
inline std::vector<std::vector<long>> kernel_points(const std::vector<std::vector<long>>& a,
                                                    std::size_t cols, long b) {
  std::vector<std::vector<long>> out;
  std::vector<long> x(cols, -b);
  while (true) {
    bool zero = std::all_of(x.begin(), x.end(), [](long v) { return v == 0; });
    bool in_ker = !zero;
    for (const auto& row : a) {
      if (!in_ker) break;
      long s = 0;
      for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
      in_ker = s == 0;
    }
    if (in_ker) out.push_back(x);
    std::size_t i = 0;
    while (i < cols && x[i] == b) x[i++] = -b;
    if (i == cols) break;
    ++x[i];
  }
  return out;
}

/// The conformally minimal elements among `pts`.
inline std::vector<std::vector<long>> minimal_elements(const std::vector<std::vector<long>>& pts) {
  std::vector<std::vector<long>> out;
  for (const auto& y : pts) {
    bool minimal = true;
    for (const auto& x : pts) {
      if (x != y && conformal_leq(x, y)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(y);
  }
  return out;
}

}  // namespace oracle
