#include "forge/matroid.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

#include "forge/error.hpp"

namespace forge {
namespace {

// Echelon basis that grows one vector at a time.
template <class F>
class IncrementalBasis {
 public:
  using V = typename F::value_type;

  explicit IncrementalBasis(F f) : f_(std::move(f)) {}

  /// Adds v when it is independent of the basis; returns whether it was.
  bool add(std::vector<V> v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& row = rows_[i];
      const V c = v[pivots_[i]];
      if (f_.is_zero(c)) continue;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = f_.sub(v[k], f_.mul(c, row[k]));
    }
    std::size_t piv = 0;
    while (piv < v.size() && f_.is_zero(v[piv])) ++piv;
    if (piv == v.size()) return false;
    const V inv = f_.div(F::one(), v[piv]);
    for (auto& x : v) x = f_.mul(x, inv);
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

  void pop() {
    rows_.pop_back();
    pivots_.pop_back();
  }

 private:
  F f_;
  std::vector<std::vector<V>> rows_;
  std::vector<std::size_t> pivots_;
};

template <class F>
std::vector<typename F::value_type> column_values(const F& f, const RatMatrix& rep, std::size_t e) {
  std::vector<typename F::value_type> v(rep.rows());
  for (std::size_t i = 0; i < rep.rows(); ++i) v[i] = f.from_rational(rep(i, e));
  return v;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

LinearMatroid::LinearMatroid(FieldSpec field, RatMatrix rep)
    : field_(field), rep_(std::move(rep)), live_(rep_.cols(), true) {}

ElementSet LinearMatroid::elements() const {
  ElementSet out;
  for (std::size_t e = 0; e < live_.size(); ++e)
    if (live_[e]) out.push_back(e);
  return out;
}

std::size_t LinearMatroid::size() const {
  return static_cast<std::size_t>(std::count(live_.begin(), live_.end(), true));
}

void LinearMatroid::check_live(const ElementSet& s) const {
  for (auto e : s) {
    if (!is_live(e)) throw Error(ErrorCode::kUnknownElement, "element " + std::to_string(e));
  }
}

std::size_t LinearMatroid::rank(const ElementSet& s) const {
  check_live(s);
  return visit_field(field_, [&](const auto& f) {
    return rank_of(f, field_columns(f, rep_, s));
  });
}

LinearMatroid LinearMatroid::restrict_to(const ElementSet& keep) const {
  check_live(keep);
  LinearMatroid out = *this;
  std::fill(out.live_.begin(), out.live_.end(), false);
  for (auto e : keep) out.live_[e] = true;
  return out;
}

LinearMatroid LinearMatroid::delete_elements(const ElementSet& del) const {
  check_live(del);
  LinearMatroid out = *this;
  for (auto e : del) out.live_[e] = false;
  return out;
}

LinearMatroid matroid_of(const RatMatrix& a, FieldSpec field) {
  if (field.is_rational()) return LinearMatroid(field, a);
  const PrimeField f(field.characteristic());
  RatMatrix rep(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) rep(i, j) = f.to_rational(f.from_rational(a(i, j)));
  return LinearMatroid(field, std::move(rep));
}

namespace {

// Circuits by increasing size; stops after the first one when `first_only`.
std::vector<ElementSet> enumerate_circuits(const LinearMatroid& m, bool first_only) {
  const ElementSet live = m.elements();
  const std::size_t n = live.size();
  if (n > 64) throw Error(ErrorCode::kTooLarge, "circuit enumeration supports at most 64 elements");
  const std::size_t r = m.rank();
  std::vector<ElementSet> circuits;
  std::vector<std::uint64_t> masks;
  std::vector<std::size_t> pick;
  for (std::size_t s = 1; s <= std::min(n, r + 1); ++s) {
    // Combinations of size s in lexicographic order.
    pick.resize(s);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::uint64_t mask = 0;
      for (auto i : pick) mask |= std::uint64_t{1} << i;
      const bool covers_known = std::any_of(masks.begin(), masks.end(),
                                            [&](std::uint64_t c) { return (c & mask) == c; });
      if (!covers_known) {
        ElementSet set;
        for (auto i : pick) set.push_back(live[i]);
        if (m.rank(set) < s) {
          circuits.push_back(std::move(set));
          if (first_only) return circuits;
          masks.push_back(mask);
        }
      }
      std::size_t i = s;
      while (i > 0 && pick[i - 1] == n - s + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return circuits;
}

}  // namespace

std::vector<ElementSet> matroid_circuits(const LinearMatroid& m) {
  return enumerate_circuits(m, false);
}

std::optional<ElementSet> smallest_circuit(const LinearMatroid& m) {
  auto found = enumerate_circuits(m, true);
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

std::size_t largest_circuit(const LinearMatroid& m) {
  std::size_t best = 0;
  for (const auto& c : matroid_circuits(m)) best = std::max(best, c.size());
  return best;
}

std::vector<ElementSet> components(const LinearMatroid& m) {
  const ElementSet live = m.elements();
  // Fundamental circuits with respect to the pivot basis connect exactly the
  // elements of each component.
  UnionFind uf(live.size());
  visit_field(m.field(), [&](const auto& f) {
    auto mat = field_columns(f, m.representation(), live);
    const auto pivots = rref_in_place(f, mat);
    for (std::size_t j = 0; j < live.size(); ++j) {
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] != j && !f.is_zero(mat(i, j))) uf.unite(j, pivots[i]);
      }
    }
  });
  std::vector<ElementSet> out;
  std::vector<std::size_t> slot(live.size(), static_cast<std::size_t>(-1));
  for (std::size_t j = 0; j < live.size(); ++j) {
    const std::size_t root = uf.find(j);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(live[j]);
  }
  return out;
}

LinearMatroid dualize(const LinearMatroid& m) {
  const ElementSet live = m.elements();
  return visit_field(m.field(), [&](const auto& f) {
    auto mat = field_columns(f, m.representation(), live);
    const auto pivots = rref_in_place(f, mat);
    std::vector<bool> is_pivot(live.size(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < live.size(); ++j)
      if (!is_pivot[j]) free_cols.push_back(j);
    RatMatrix rep(free_cols.size(), m.ground_size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      rep(k, live[free_cols[k]]) = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i)
        rep(k, live[pivots[i]]) = f.to_rational(f.neg(mat(i, free_cols[k])));
    }
    LinearMatroid out(m.field(), std::move(rep));
    out.live_ = m.live_;
    return out;
  });
}

LinearMatroid minor(const LinearMatroid& m, const ElementSet& del, const ElementSet& con) {
  for (auto e : del) {
    if (std::find(con.begin(), con.end(), e) != con.end()) {
      throw Error(ErrorCode::kOverlap, "element " + std::to_string(e) + " both deleted and contracted");
    }
  }
  LinearMatroid out = m.delete_elements(del);
  if (!con.empty()) {
    std::vector<std::vector<Rational>> gens;
    for (auto e : con) {
      if (!m.is_live(e)) throw Error(ErrorCode::kUnknownElement, "element " + std::to_string(e));
      gens.push_back(m.vector_of(e));
    }
    out = contract_subspace(out, gens).delete_elements(con);
  }
  return out;
}

LinearMatroid contract_subspace(const LinearMatroid& m,
                                const std::vector<std::vector<Rational>>& generators) {
  const std::size_t dim = m.ambient_dim();
  for (const auto& g : generators) {
    if (g.size() != dim) throw Error(ErrorCode::kDimensionMismatch, "generator length");
  }
  if (generators.empty()) return m;
  return visit_field(m.field(), [&](const auto& f) {
    FieldMatrix<std::decay_t<decltype(f)>> gens(generators.size(), dim);
    for (std::size_t i = 0; i < generators.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) gens(i, j) = f.from_rational(generators[i][j]);
    const auto pivots = rref_in_place(f, gens);
    std::vector<bool> is_pivot(dim, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < dim; ++j)
      if (!is_pivot[j]) keep.push_back(j);
    RatMatrix rep(keep.size(), m.ground_size());
    for (std::size_t e = 0; e < m.ground_size(); ++e) {
      auto v = column_values(f, m.representation(), e);
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        const auto c = v[pivots[i]];
        if (f.is_zero(c)) continue;
        for (std::size_t j = 0; j < dim; ++j) v[j] = f.sub(v[j], f.mul(c, gens(i, j)));
      }
      for (std::size_t k = 0; k < keep.size(); ++k) rep(k, e) = f.to_rational(v[keep[k]]);
    }
    LinearMatroid out(m.field(), std::move(rep));
    out.live_ = m.live_;
    return out;
  });
}

LinearMatroid clone_k(const LinearMatroid& m, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kBadParams, "clone factor must be positive");
  const std::size_t n = m.ground_size();
  RatMatrix rep(m.ambient_dim(), n * k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m.ambient_dim(); ++i)
      for (std::size_t e = 0; e < n; ++e) rep(i, j * n + e) = m.representation()(i, e);
  LinearMatroid all(m.field(), std::move(rep));
  ElementSet keep;
  for (std::size_t j = 0; j < k; ++j)
    for (auto e : m.elements()) keep.push_back(j * n + e);
  return all.restrict_to(keep);
}

bool matroid_equal(const LinearMatroid& a, const LinearMatroid& b, std::size_t max_elements) {
  if (a.elements() != b.elements()) return false;
  const ElementSet live = a.elements();
  if (live.size() > max_elements) {
    throw Error(ErrorCode::kTooLarge, std::to_string(live.size()) + " elements exceed the limit of " +
                                          std::to_string(max_elements));
  }
  return visit_field(a.field(), [&](const auto& fa) {
    return visit_field(b.field(), [&](const auto& fb) {
      using FA = std::decay_t<decltype(fa)>;
      using FB = std::decay_t<decltype(fb)>;
      std::vector<std::vector<typename FA::value_type>> va;
      std::vector<std::vector<typename FB::value_type>> vb;
      for (auto e : live) {
        va.push_back(column_values(fa, a.representation(), e));
        vb.push_back(column_values(fb, b.representation(), e));
      }
      IncrementalBasis<FA> ba(fa);
      IncrementalBasis<FB> bb(fb);
      // Depth-first over sets independent in both; the first set whose
      // status differs is found from an independent proper subset.
      auto dfs = [&](auto&& self, std::size_t start) -> bool {
        for (std::size_t e = start; e < live.size(); ++e) {
          const bool ia = ba.add(va[e]);
          const bool ib = bb.add(vb[e]);
          if (ia != ib) {
            if (ia) ba.pop();
            if (ib) bb.pop();
            return false;
          }
          if (ia) {
            const bool ok = self(self, e + 1);
            ba.pop();
            bb.pop();
            if (!ok) return false;
          }
        }
        return true;
      };
      return dfs(dfs, 0);
    });
  });
}

}  // namespace forge
