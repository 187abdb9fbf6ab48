#pragma once

// Search engine behind the depth parameters.  Private to the library.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "forge/decomposition_tree.hpp"
#include "forge/depth.hpp"
#include "forge/error.hpp"
#include "forge/field.hpp"

namespace forge::detail {

enum class SearchKind {
  kDeletion,
  kContraction,
  kContractionDeletion,
  kCStar,
  kCStarDeletion,
  kPrincipal,
};

inline bool is_cstar_like(SearchKind k) {
  return k == SearchKind::kCStar || k == SearchKind::kCStarDeletion || k == SearchKind::kPrincipal;
}

/// A minor in canonical form: full-row-rank reduced echelon matrix whose
/// column j is element ids[j].
template <class F>
struct State {
  FieldMatrix<F> mat;
  std::vector<std::size_t> ids;
  std::size_t rank() const { return mat.rows(); }
  std::size_t size() const { return ids.size(); }
};

template <class F>
State<F> normalize(const F& f, FieldMatrix<F> m, std::vector<std::size_t> ids) {
  const auto pivots = rref_in_place(f, m);
  if (pivots.size() < m.rows()) {
    FieldMatrix<F> trimmed(pivots.size(), m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) trimmed(i, j) = m(i, j);
    m = std::move(trimmed);
  }
  return State<F>{std::move(m), std::move(ids)};
}

template <class F>
class DepthSearch {
 public:
  using V = typename F::value_type;
  using Dir = std::vector<V>;

  enum class MoveType { kDelete, kContract, kDirection, kBlock };
  struct Move {
    MoveType type = MoveType::kDelete;
    std::size_t pos = 0;
    Dir dir;
    std::vector<Dir> block;  // kBlock: independent directions, one edge each
    std::size_t cost() const { return type == MoveType::kBlock ? block.size() : 1; }
  };

  /// `original` holds every element's vector in the coordinates used for
  /// witness generators.
  DepthSearch(F f, SearchKind kind, const DepthOptions& opt, FieldMatrix<F> original)
      : f_(std::move(f)), kind_(kind), opt_(opt), original_(std::move(original)) {}

  State<F> initial(const ElementSet& live) const {
    FieldMatrix<F> m(original_.rows(), live.size());
    for (std::size_t i = 0; i < original_.rows(); ++i)
      for (std::size_t j = 0; j < live.size(); ++j) m(i, j) = original_(i, live[j]);
    return normalize(f_, std::move(m), live);
  }

  /// Value if at most `limit`, otherwise a lower bound exceeding `limit`.
  std::size_t solve(const State<F>& s0, std::size_t limit) {
    if (is_cstar_like(kind_)) {
      const State<F> s = strip_loops(s0);
      if (s.rank() == 0) return 0;
      if (kind_ == SearchKind::kCStarDeletion && s.size() == 1) return 1;
      return solve_components(s, limit, 0);
    }
    if (s0.size() == 1) return 1;
    return solve_components(s0, limit, 1);
  }

  /// Appends the witness for `s0` below vertex `v`.
  void build(const State<F>& s0, DecompositionTree& t, std::size_t v) {
    State<F> s = s0;
    if (is_cstar_like(kind_)) {
      std::vector<std::size_t> keep;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (is_zero_column(s, j)) {
          t.add_label(v, s.ids[j]);
        } else {
          keep.push_back(j);
        }
      }
      s = sub_state(s, keep);
      if (s.rank() == 0) return;
    }
    for (const auto& comp : components_of(s)) {
      if (!is_cstar_like(kind_) && comp.size() == 1) {
        t.add_label(v, s.ids[comp[0]]);
        continue;
      }
      State<F> c = sub_state(s, comp);
      Move move;
      if (kind_ == SearchKind::kCStarDeletion && c.size() == 1) {
        move = Move{MoveType::kDirection, 0, c.mat.column(0), {}};
      } else if (c.rank() == 1 && is_cstar_like(kind_)) {
        move = kind_ == SearchKind::kPrincipal ? Move{MoveType::kContract, 0, {}, {}}
                                               : Move{MoveType::kDirection, 0, Dir{F::one()}, {}};
      } else {
        const std::string key = key_of(c);
        auto it = memo_.find(key);
        if (it == memo_.end() || !it->second.exact) {
          solve_connected(c, c.size() + c.rank());
          it = memo_.find(key);
        }
        move = it->second.move;
      }
      std::size_t child = 0;
      switch (move.type) {
        case MoveType::kDelete:
          child = t.add_child(v, EdgeOp::kDelete, c.ids[move.pos]);
          break;
        case MoveType::kContract:
          child = t.add_child(v, EdgeOp::kContractElement, c.ids[move.pos],
                              to_rationals(original_column(c.ids[move.pos])));
          break;
        case MoveType::kDirection:
          child = t.add_child(v, EdgeOp::kContractSubspace, 0, to_rationals(lift(c, move.dir)));
          break;
        case MoveType::kBlock: {
          // One edge per direction; elements turning into loops partway
          // down the chain are labeled where that happens.
          child = v;
          std::vector<bool> labeled(c.size(), false);
          for (std::size_t k = 0; k < move.block.size(); ++k) {
            child = t.add_child(child, EdgeOp::kContractSubspace, 0, to_rationals(lift(c, move.block[k])));
            if (k + 1 == move.block.size()) break;
            const State<F> q = contract_block(
                c, std::vector<Dir>(move.block.begin(), move.block.begin() + static_cast<long>(k) + 1));
            for (std::size_t j = 0; j < q.size(); ++j) {
              if (labeled[j] || !is_zero_column(q, j)) continue;
              labeled[j] = true;
              t.add_label(child, q.ids[j]);
            }
          }
          // Those are zero columns of the final quotient too.
          const State<F> q = apply(c, move);
          std::vector<std::size_t> keep;
          for (std::size_t j = 0; j < q.size(); ++j)
            if (!labeled[j]) keep.push_back(j);
          build(sub_state(q, keep), t, child);
          continue;
        }
      }
      build(apply(c, move), t, child);
    }
  }

  std::size_t states() const { return memo_.size(); }
  /// Some Q minor was searched with bounded generators only.
  bool inexact() const { return inexact_; }

 private:
  struct Entry {
    std::size_t lower = 0;
    bool exact = false;
    Move move;
  };

  static bool is_zero_column(const State<F>& s, std::size_t j) {
    for (std::size_t i = 0; i < s.rank(); ++i)
      if (!F::is_zero(s.mat(i, j))) return false;
    return true;
  }

  State<F> sub_state(const State<F>& s, const std::vector<std::size_t>& cols) const {
    FieldMatrix<F> m(s.rank(), cols.size());
    std::vector<std::size_t> ids;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      ids.push_back(s.ids[cols[j]]);
      for (std::size_t i = 0; i < s.rank(); ++i) m(i, j) = s.mat(i, cols[j]);
    }
    return normalize(f_, std::move(m), std::move(ids));
  }

  State<F> strip_loops(const State<F>& s) const {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < s.size(); ++j)
      if (!is_zero_column(s, j)) keep.push_back(j);
    if (keep.size() == s.size()) return s;
    return sub_state(s, keep);
  }

  std::vector<std::size_t> pivots_of(const State<F>& s) const {
    std::vector<std::size_t> piv(s.rank());
    for (std::size_t i = 0; i < s.rank(); ++i) {
      std::size_t j = 0;
      while (F::is_zero(s.mat(i, j))) ++j;
      piv[i] = j;
    }
    return piv;
  }

  /// Column positions of each component, ordered by smallest position.
  std::vector<std::vector<std::size_t>> components_of(const State<F>& s) const {
    const std::size_t n = s.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t j = 0; j < n; ++j) parent[j] = j;
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    const auto piv = pivots_of(s);
    for (std::size_t i = 0; i < s.rank(); ++i) {
      for (std::size_t j = piv[i] + 1; j < n; ++j) {
        if (F::is_zero(s.mat(i, j))) continue;
        const std::size_t a = find(j), b = find(piv[i]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t r = find(j);
      if (slot[r] == n) {
        slot[r] = out.size();
        out.emplace_back();
      }
      out[slot[r]].push_back(j);
    }
    return out;
  }

  std::size_t solve_components(const State<F>& s, std::size_t limit, std::size_t floor) {
    const auto comps = components_of(s);
    if (comps.size() == 1) return solve_connected(s, limit);
    std::size_t best = floor;
    for (const auto& comp : comps) {
      if (comp.size() == 1) {
        best = std::max<std::size_t>(best, 1);
        continue;
      }
      best = std::max(best, solve_connected(sub_state(s, comp), limit));
      if (best > limit) return best;
    }
    return best;
  }

  std::string key_of(const State<F>& s) const {
    std::string key = std::to_string(s.rank()) + 'x' + std::to_string(s.size()) + ':';
    for (const auto& x : s.mat.data()) F::append_key(key, x);
    return key;
  }

  // s is connected; for contraction* kinds it has no loops.
  std::size_t solve_connected(const State<F>& s, std::size_t limit) {
    if (is_cstar_like(kind_)) {
      if (s.rank() == 1) return 1;
      if (kind_ == SearchKind::kCStarDeletion && s.size() == 1) return 1;
    } else if (s.size() == 1) {
      return 1;
    }
    const std::string key = key_of(s);
    {
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        if (it->second.exact || it->second.lower > limit) return it->second.lower;
      }
    }
    if (memo_.size() >= opt_.max_states) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "search exceeded " + std::to_string(opt_.max_states) + " memoized minors");
    }
    std::size_t lb = std::max<std::size_t>(memo_[key].lower, 2);
    if (lb > limit) {
      memo_[key].lower = lb;
      return lb;
    }
    std::size_t best = limit + 1;
    Move chosen;
    for_each_move(s, [&](Move&& move) {
      const std::size_t cost = move.cost();
      if (cost >= best) return true;
      const std::size_t sub = solve(apply(s, move), best - 1 - cost);
      if (sub + cost < best) {
        best = sub + cost;
        chosen = std::move(move);
      }
      return best > lb;
    });
    Entry& e = memo_[key];
    if (best <= limit) {
      e.lower = best;
      e.exact = true;
      e.move = std::move(chosen);
      return best;
    }
    e.lower = std::max(e.lower, limit + 1);
    return e.lower;
  }

  /// Calls fn(move) for each branch in tie-breaking order until fn returns
  /// false.
  template <class Fn>
  void for_each_move(const State<F>& s, Fn&& fn) {
    const bool deletions = kind_ == SearchKind::kDeletion ||
                           kind_ == SearchKind::kContractionDeletion ||
                           kind_ == SearchKind::kCStarDeletion;
    const bool contractions = kind_ == SearchKind::kContraction ||
                              kind_ == SearchKind::kContractionDeletion ||
                              kind_ == SearchKind::kPrincipal;
    if (deletions) {
      for (std::size_t j = 0; j < s.size(); ++j)
        if (!fn(Move{MoveType::kDelete, j, {}, {}})) return;
    }
    if (contractions) {
      for (std::size_t j = 0; j < s.size(); ++j)
        if (!fn(Move{MoveType::kContract, j, {}, {}})) return;
    }
    if (kind_ == SearchKind::kCStar || kind_ == SearchKind::kCStarDeletion) {
      if (opt_.cstar_moves == CStarMoves::kSplits) {
        if (auto blocks = split_blocks(s)) {
          for (auto& b : *blocks)
            if (!fn(Move{MoveType::kBlock, 0, {}, std::move(b)})) return;
          return;
        }
      }
      if constexpr (std::is_same_v<F, RationalField>) inexact_ = true;
      for_each_direction(s, [&](Dir&& d) { return fn(Move{MoveType::kDirection, 0, std::move(d), {}}); });
    }
  }

  /// Bases of span(Y1) & span(Y2) over bipartitions of the parallel classes
  /// of a connected loopless minor that actually split it, smallest first,
  /// then the whole space.  nullopt when there are too many classes.
  std::optional<std::vector<std::vector<Dir>>> split_blocks(const State<F>& s) const {
    const std::size_t r = s.rank();
    // Parallel classes, represented by their first column.
    std::vector<std::size_t> reps;
    {
      std::unordered_set<std::string> seen;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (seen.insert(dir_key(canonical_dir(s.mat.column(j)))).second) reps.push_back(j);
    }
    const std::size_t n = reps.size();
    if (n > opt_.max_split_classes) return std::nullopt;
    std::vector<std::pair<std::size_t, std::vector<Dir>>> found;
    std::unordered_set<std::string> seen;
    for (std::uint32_t mask = 1; n >= 2 && mask < (std::uint32_t{1} << n) - 1; mask += 2) {
      std::vector<std::size_t> y1, y2;
      for (std::size_t j = 0; j < n; ++j) ((mask >> j) & 1 ? y1 : y2).push_back(reps[j]);
      const auto b1 = basis_positions(s, y1);
      const auto b2 = basis_positions(s, y2);
      const std::size_t t = b1.size() + b2.size() - r;
      // t + 1 >= r is never better than contracting everything.
      if (t + 1 >= r || b1.size() <= t || b2.size() <= t) continue;
      auto basis = intersection_basis(s, b1, b2);
      // Canonical key of the subspace.
      FieldMatrix<F> k(basis.size(), r);
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < r; ++j) k(i, j) = basis[i][j];
      rref_in_place(f_, k);
      std::string key;
      for (const auto& x : k.data()) F::append_key(key, x);
      if (!seen.insert(key).second) continue;
      found.emplace_back(t, std::move(basis));
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::vector<Dir>> out;
    for (auto& [t, b] : found) out.push_back(std::move(b));
    std::vector<Dir> all;
    for (std::size_t i = 0; i < r; ++i) {
      Dir e(r, F::zero());
      e[i] = F::one();
      all.push_back(std::move(e));
    }
    out.push_back(std::move(all));
    return out;
  }

  /// Basis of span(B1) & span(B2) for independent column sets b1, b2 that
  /// together span the whole space.
  std::vector<Dir> intersection_basis(const State<F>& s, const std::vector<std::size_t>& b1,
                                      const std::vector<std::size_t>& b2) const {
    const std::size_t k = b1.size() + b2.size();
    FieldMatrix<F> m(s.rank(), k);
    for (std::size_t i = 0; i < s.rank(); ++i) {
      for (std::size_t j = 0; j < b1.size(); ++j) m(i, j) = s.mat(i, b1[j]);
      for (std::size_t j = 0; j < b2.size(); ++j) m(i, b1.size() + j) = s.mat(i, b2[j]);
    }
    const auto piv = rref_in_place(f_, m);
    std::vector<bool> is_piv(k, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<Dir> out;
    // Each free column gives a kernel vector; its B1-part is in the meet.
    for (std::size_t fc = 0; fc < k; ++fc) {
      if (is_piv[fc]) continue;
      Dir coef(k, F::zero());
      coef[fc] = F::one();
      for (std::size_t i = 0; i < piv.size(); ++i) coef[piv[i]] = f_.neg(m(i, fc));
      Dir w(s.rank(), F::zero());
      for (std::size_t j = 0; j < b1.size(); ++j) {
        if (F::is_zero(coef[j])) continue;
        for (std::size_t i = 0; i < s.rank(); ++i)
          w[i] = f_.add(w[i], f_.mul(coef[j], s.mat(i, b1[j])));
      }
      out.push_back(canonical_dir(std::move(w)));
    }
    return out;
  }

  /// Quotient of s by the span of independent directions.
  State<F> contract_block(const State<F>& s, const std::vector<Dir>& block) const {
    const std::size_t t = block.size(), r = s.rank();
    FieldMatrix<F> m(r, t + s.size());
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < t; ++j) m(i, j) = block[j][i];
      for (std::size_t j = 0; j < s.size(); ++j) m(i, t + j) = s.mat(i, j);
    }
    rref_in_place(f_, m);
    // The first t rows carry the pivots of the block; the rest are the
    // coordinates of the quotient.
    FieldMatrix<F> q(r - t, s.size());
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = 0; j < s.size(); ++j) q(i - t, j) = m(i, t + j);
    return normalize(f_, std::move(q), s.ids);
  }

  std::string dir_key(const Dir& d) const {
    std::string key;
    for (const auto& x : d) F::append_key(key, x);
    return key;
  }

  /// Scales d so that its first nonzero entry is canonical (1 over GF(p),
  /// a positive coprime integer vector over Q).
  Dir canonical_dir(Dir d) const {
    if constexpr (std::is_same_v<F, RationalField>) {
      const IntVector iv = canonical_primitive(integral_primitive(d));
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = Rational(iv[i]);
      return d;
    } else {
      std::size_t i = 0;
      while (F::is_zero(d[i])) ++i;
      const V inv = f_.div(F::one(), d[i]);
      for (auto& x : d) x = f_.mul(x, inv);
      return d;
    }
  }

  template <class Fn>
  void for_each_direction(const State<F>& s, Fn&& fn) {
    const std::size_t r = s.rank();
    std::unordered_set<std::string> seen;
    // Directions of the elements first.
    for (std::size_t j = 0; j < s.size(); ++j) {
      Dir d = canonical_dir(s.mat.column(j));
      if (!seen.insert(dir_key(d)).second) continue;
      if (!fn(std::move(d))) return;
    }
    if constexpr (std::is_same_v<F, RationalField>) {
      // A contraction that separates Y1 from Y2 must be along the line
      // span(Y1) & span(Y2), which exists when r(Y1) + r(Y2) = r + 1.
      const std::size_t n = s.size();
      if (n >= 2 && n <= 20) {
        for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << (n - 1)) * 2; mask += 2) {
          std::vector<std::size_t> y1, y2;
          for (std::size_t j = 0; j < n; ++j) ((mask >> j) & 1 ? y1 : y2).push_back(j);
          if (y2.empty()) continue;
          auto d = intersection_line(s, y1, y2);
          if (!d) continue;
          Dir c = canonical_dir(std::move(*d));
          if (!seen.insert(dir_key(c)).second) continue;
          if (!fn(std::move(c))) return;
        }
      }
      const long bound = std::max<long>(opt_.gen_bound, 1);
      std::vector<long> x(r);
      for (long level = 1; level <= bound; ++level) {
        // All vectors in [-level, level]^r with max-norm exactly `level`.
        std::fill(x.begin(), x.end(), -level);
        while (true) {
          long norm = 0;
          std::size_t lead = r;
          for (std::size_t i = 0; i < r; ++i) {
            norm = std::max(norm, std::labs(x[i]));
            if (lead == r && x[i] != 0) lead = i;
          }
          if (norm == level && lead < r && x[lead] > 0) {
            Integer g = 0;
            for (auto v : x) g = gcd(g, Integer(v));
            if (g == 1) {
              Dir d(r);
              for (std::size_t i = 0; i < r; ++i) d[i] = Rational(x[i]);
              if (seen.insert(dir_key(d)).second) {
                if (!fn(std::move(d))) return;
              }
            }
          }
          std::size_t i = r;
          while (i > 0 && x[i - 1] == level) x[--i] = -level;
          if (i == 0) break;
          ++x[i - 1];
        }
      }
    } else {
      const std::uint64_t p = f_.characteristic();
      std::uint64_t count = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (count > (opt_.max_states * 4) / p) {
          throw Error(ErrorCode::kBudgetExceeded, "too many subspace directions over GF(" +
                                                      std::to_string(p) + ") in rank " +
                                                      std::to_string(r));
        }
        count = count * p + 1;
      }
      Dir d(r);
      for (std::size_t lead = 0; lead < r; ++lead) {
        std::fill(d.begin(), d.end(), V{0});
        d[lead] = 1;
        while (true) {
          if (seen.insert(dir_key(d)).second) {
            if (!fn(Dir(d))) return;
          }
          std::size_t i = r;
          while (i > lead + 1 && d[i - 1] == p - 1) d[--i] = 0;
          if (i == lead + 1) break;
          ++d[i - 1];
        }
      }
    }
  }

  /// Column positions of a basis of the span of `cols`.
  std::vector<std::size_t> basis_positions(const State<F>& s, const std::vector<std::size_t>& cols) const {
    FieldMatrix<F> m(s.rank(), cols.size());
    for (std::size_t i = 0; i < s.rank(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = s.mat(i, cols[j]);
    std::vector<std::size_t> out;
    for (auto p : rref_in_place(f_, m)) out.push_back(cols[p]);
    return out;
  }

  /// The line span(y1) & span(y2) when it is one-dimensional.
  std::optional<Dir> intersection_line(const State<F>& s, const std::vector<std::size_t>& y1,
                                       const std::vector<std::size_t>& y2) const {
    const auto b1 = basis_positions(s, y1);
    const auto b2 = basis_positions(s, y2);
    if (b1.size() + b2.size() != s.rank() + 1) return std::nullopt;
    // Kernel of [B1 | B2] is one-dimensional; its B1-part gives the line.
    const std::size_t k = b1.size() + b2.size();
    FieldMatrix<F> m(s.rank(), k);
    for (std::size_t i = 0; i < s.rank(); ++i) {
      for (std::size_t j = 0; j < b1.size(); ++j) m(i, j) = s.mat(i, b1[j]);
      for (std::size_t j = 0; j < b2.size(); ++j) m(i, b1.size() + j) = s.mat(i, b2[j]);
    }
    const auto piv = rref_in_place(f_, m);
    if (piv.size() != s.rank()) return std::nullopt;
    std::vector<bool> is_piv(k, false);
    for (auto p : piv) is_piv[p] = true;
    std::size_t free_col = 0;
    while (is_piv[free_col]) ++free_col;
    Dir coef(k, F::zero());
    coef[free_col] = F::one();
    for (std::size_t i = 0; i < piv.size(); ++i) coef[piv[i]] = f_.neg(m(i, free_col));
    Dir w(s.rank(), F::zero());
    for (std::size_t j = 0; j < b1.size(); ++j) {
      if (F::is_zero(coef[j])) continue;
      for (std::size_t i = 0; i < s.rank(); ++i)
        w[i] = f_.add(w[i], f_.mul(coef[j], s.mat(i, b1[j])));
    }
    for (const auto& x : w)
      if (!F::is_zero(x)) return w;
    return std::nullopt;
  }

  State<F> contract_direction(const State<F>& s, const Dir& w) const {
    std::size_t lead = 0;
    while (F::is_zero(w[lead])) ++lead;
    FieldMatrix<F> m(s.rank() - 1, s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      const V c = f_.div(s.mat(lead, j), w[lead]);
      std::size_t out_row = 0;
      for (std::size_t i = 0; i < s.rank(); ++i) {
        if (i == lead) continue;
        m(out_row++, j) = F::is_zero(c) ? s.mat(i, j) : f_.sub(s.mat(i, j), f_.mul(c, w[i]));
      }
    }
    return normalize(f_, std::move(m), s.ids);
  }

  State<F> remove_column(const State<F>& s, std::size_t pos) const {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != pos) keep.push_back(j);
    return sub_state(s, keep);
  }

  State<F> apply(const State<F>& s, const Move& m) const {
    switch (m.type) {
      case MoveType::kDelete:
        return remove_column(s, m.pos);
      case MoveType::kContract: {
        const Dir w = s.mat.column(m.pos);
        bool zero = true;
        for (const auto& x : w) zero = zero && F::is_zero(x);
        if (zero) return remove_column(s, m.pos);
        return remove_column(contract_direction(s, w), m.pos);
      }
      case MoveType::kDirection:
        return contract_direction(s, m.dir);
      case MoveType::kBlock:
        return contract_block(s, m.block);
    }
    return s;
  }

  Dir original_column(std::size_t id) const { return original_.column(id); }

  /// Echelon row i of s is the image of the pivot element of row i, so a
  /// direction w in echelon coordinates is the image of the same combination
  /// of the original pivot vectors.
  Dir lift(const State<F>& s, const Dir& w) const {
    const auto piv = pivots_of(s);
    Dir g(original_.rows(), F::zero());
    for (std::size_t i = 0; i < s.rank(); ++i) {
      if (F::is_zero(w[i])) continue;
      const std::size_t id = s.ids[piv[i]];
      for (std::size_t k = 0; k < g.size(); ++k)
        g[k] = f_.add(g[k], f_.mul(w[i], original_(k, id)));
    }
    return g;
  }

  std::vector<Rational> to_rationals(const Dir& d) const {
    std::vector<Rational> out;
    out.reserve(d.size());
    for (const auto& x : d) out.push_back(F::to_rational(x));
    return out;
  }

  F f_;
  SearchKind kind_;
  DepthOptions opt_;
  FieldMatrix<F> original_;
  std::unordered_map<std::string, Entry> memo_;
  bool inexact_ = false;
};

}  // namespace forge::detail
