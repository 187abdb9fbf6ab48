#include "forge/depth.hpp"

#include <algorithm>

#include "depth_search.hpp"
#include "forge/error.hpp"

namespace forge {

using detail::DepthSearch;
using detail::SearchKind;

std::string depth_param_name(DepthParam p) {
  switch (p) {
    case DepthParam::kDeletion: return "dd";
    case DepthParam::kContraction: return "cd";
    case DepthParam::kContractionDeletion: return "cdd";
    case DepthParam::kCStar: return "csd";
    case DepthParam::kCStarDeletion: return "csdd";
    case DepthParam::kPrincipalCStar: return "principal-csd";
  }
  return "unknown";
}

std::string exactness_name(Exactness e) {
  return e == Exactness::kExact ? "exact" : "upper-bound";
}

nlohmann::json DepthReport::to_json() const {
  nlohmann::json j{{"param", depth_param_name(param)},
                   {"value", value},
                   {"exceeds_budget", exceeds_budget},
                   {"exactness", exactness_name(exactness)}};
  if (!exceeds_budget) j["witness"] = witness.to_json();
  if (lifted_value) j["lifted_value"] = *lifted_value;
  if (lift_prime) j["lift_prime"] = *lift_prime;
  if (!note.empty()) j["note"] = note;
  return j;
}

namespace {

SearchKind search_kind(DepthParam p) {
  switch (p) {
    case DepthParam::kDeletion: return SearchKind::kDeletion;
    case DepthParam::kContraction: return SearchKind::kContraction;
    case DepthParam::kContractionDeletion: return SearchKind::kContractionDeletion;
    case DepthParam::kCStar: return SearchKind::kCStar;
    case DepthParam::kCStarDeletion: return SearchKind::kCStarDeletion;
    case DepthParam::kPrincipalCStar: return SearchKind::kPrincipal;
  }
  return SearchKind::kDeletion;
}

TreeKind tree_kind(DepthParam p) {
  switch (p) {
    case DepthParam::kDeletion: return TreeKind::kDeletion;
    case DepthParam::kContraction: return TreeKind::kContraction;
    case DepthParam::kContractionDeletion: return TreeKind::kContractionDeletion;
    case DepthParam::kCStar: return TreeKind::kCStarGeneral;
    case DepthParam::kCStarDeletion: return TreeKind::kCStarDeletion;
    case DepthParam::kPrincipalCStar: return TreeKind::kCStarPrincipal;
  }
  return TreeKind::kDeletion;
}

// Runs the search over the matroid's own field.
DepthReport run_search(DepthParam param, const LinearMatroid& m, const DepthOptions& opt) {
  const ElementSet live = m.elements();
  if (live.empty()) throw Error(ErrorCode::kEmptyMatroid, "matroid has no elements");
  DepthReport report;
  report.param = param;
  report.witness = DecompositionTree(tree_kind(param));
  const bool cstar_like = detail::is_cstar_like(search_kind(param));
  visit_field(m.field(), [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    ElementSet all(m.ground_size());
    for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
    DepthSearch<F> search(f, search_kind(param), opt, field_columns(f, m.representation(), all));
    const auto start = search.initial(live);
    const std::size_t upper = cstar_like ? start.rank() : live.size();
    const std::size_t cap = opt.budget ? std::min(*opt.budget, upper) : upper;
    std::size_t found = cap + 1;
    std::size_t t = cstar_like ? 0 : 1;
    for (; t <= cap; ++t) {
      const std::size_t r = search.solve(start, t);
      if (r <= t) {
        found = r;
        break;
      }
      if (r > t + 1) t = r - 1;
    }
    if (found > cap) {
      report.exceeds_budget = true;
      report.value = std::max(cap + 1, t);
      return;
    }
    report.value = found;
    search.build(start, report.witness, 0);
    if (search.inexact()) {
      report.exactness = Exactness::kUpperBound;
      report.note = "too many parallel classes to split; bounded generator search over Q";
    }
  });
  return report;
}

std::vector<Rational> symmetric_lift(const std::vector<Rational>& residues, std::uint64_t p) {
  std::vector<Rational> out;
  const Integer half = Integer(static_cast<unsigned long>(p / 2));
  for (const auto& r : residues) {
    Integer v = r.get_num();
    if (v > half) v -= Integer(static_cast<unsigned long>(p));
    out.emplace_back(v);
  }
  return out;
}

// Rational reconstruction of a residue: a/b with |a|, b <= sqrt(p/2).
std::optional<Rational> reconstruct(const Integer& residue, std::uint64_t p) {
  Integer r0(static_cast<unsigned long>(p)), r1 = residue;
  Integer t0 = 0, t1 = 1;
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(static_cast<unsigned long>(p / 2)).get_mpz_t());
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Rational q(r1, t1);
  q.canonicalize();
  return q;
}

std::optional<std::vector<Rational>> reconstruct_vector(const std::vector<Rational>& residues,
                                                        std::uint64_t p) {
  std::vector<Rational> out;
  for (const auto& r : residues) {
    auto q = reconstruct(r.get_num(), p);
    if (!q) return std::nullopt;
    out.push_back(*q);
  }
  return out;
}

// Rewrites the generators of a GF(p) tree with `translate`; element edges
// take the Q vector of the element.
template <class Translate>
std::optional<DecompositionTree> translate_tree(const DecompositionTree& tp, const LinearMatroid& mq,
                                                Translate&& translate) {
  DecompositionTree out(tp.kind());
  for (std::size_t v = 0; v < tp.size(); ++v) {
    const auto& n = tp.node(v);
    if (v > 0) {
      std::vector<Rational> gen;
      if (n.op == EdgeOp::kContractElement) {
        gen = mq.vector_of(n.element);
      } else if (n.op == EdgeOp::kContractSubspace) {
        auto g = translate(n.generator);
        if (!g) return std::nullopt;
        gen = std::move(*g);
      }
      out.add_child(n.parent, n.op, n.element, std::move(gen));
    }
    for (auto e : n.labels) out.add_label(v, e);
  }
  return out;
}

// Contraction* parameters of a Q-matroid: exact value through a GF(p) lift
// when available, witness re-verified over Q.
DepthReport cstar_over_q(DepthParam param, const LinearMatroid& m, const DepthOptions& opt) {
  std::optional<std::uint64_t> p;
  std::string note;
  if (opt.lift) {
    if (opt.lift_prime) {
      if (matroid_equal(m, reduce_mod_p(m, *opt.lift_prime), opt.lift_check_limit)) {
        p = opt.lift_prime;
      } else {
        note = "GF(" + std::to_string(*opt.lift_prime) + ") does not represent the same matroid";
      }
    } else if (m.size() <= opt.lift_check_limit) {
      p = find_lift_prime(m, opt.min_lift_prime, opt.lift_check_limit);
      if (!p) note = "no lifting prime found";
    } else {
      note = "matroid too large for the lift check";
    }
  }
  if (!p) {
    DepthReport r = run_search(param, m, opt);
    r.exactness = Exactness::kUpperBound;
    r.note = note.empty() ? "bounded generator search over Q" : note + "; bounded generator search over Q";
    return r;
  }
  const LinearMatroid mp = reduce_mod_p(m, *p);
  DepthReport lifted = run_search(param, mp, opt);
  if (lifted.exceeds_budget) {
    lifted.lift_prime = p;
    lifted.witness = DecompositionTree(lifted.witness.kind());
    return lifted;
  }
  DepthReport out;
  out.param = param;
  out.lift_prime = p;
  out.lifted_value = lifted.value;
  const auto try_tree = [&](std::optional<DecompositionTree> t) {
    if (!t || t->depth() != lifted.value) return false;
    if (!verify_cstar_tree(m, *t)) return false;
    out.value = lifted.value;
    out.witness = std::move(*t);
    out.exactness = Exactness::kExact;
    return true;
  };
  const std::uint64_t prime = *p;
  if (try_tree(translate_tree(lifted.witness, m, [&](const std::vector<Rational>& g) {
        return std::optional<std::vector<Rational>>(symmetric_lift(g, prime));
      }))) {
    return out;
  }
  if (try_tree(translate_tree(lifted.witness, m, [&](const std::vector<Rational>& g) {
        return reconstruct_vector(g, prime);
      }))) {
    return out;
  }
  // Search over Q at the lifted value.
  DepthOptions at_value = opt;
  at_value.budget = lifted.value;
  DepthReport q = run_search(param, m, at_value);
  if (!q.exceeds_budget) {
    q.lift_prime = p;
    q.lifted_value = lifted.value;
    return q;
  }
  DepthOptions open = opt;
  open.budget.reset();
  q = run_search(param, m, open);
  q.exactness = Exactness::kUpperBound;
  q.lift_prime = p;
  q.lifted_value = lifted.value;
  q.note = "no Q witness found at the value computed over GF(" + std::to_string(prime) + ")";
  return q;
}

}  // namespace

LinearMatroid reduce_mod_p(const LinearMatroid& m, std::uint64_t p) {
  if (!m.field().is_rational()) throw Error(ErrorCode::kBadParams, "matroid is not over Q");
  RatMatrix scaled(m.ambient_dim(), m.ground_size());
  for (std::size_t e = 0; e < m.ground_size(); ++e) {
    const IntVector col = integral_primitive(m.vector_of(e));
    for (std::size_t i = 0; i < m.ambient_dim(); ++i) scaled(i, e) = Rational(col[i]);
  }
  return matroid_of(scaled, FieldSpec::prime(p)).restrict_to(m.elements());
}

std::optional<std::uint64_t> find_lift_prime(const LinearMatroid& m, std::uint64_t start,
                                             std::size_t limit, std::size_t attempts) {
  std::uint64_t p = start <= 2 ? 2 : (is_prime(start) ? start : next_prime(start));
  for (std::size_t k = 0; k < attempts; ++k, p = next_prime(p)) {
    if (matroid_equal(m, reduce_mod_p(m, p), limit)) return p;
  }
  return std::nullopt;
}

DepthReport depth_of(DepthParam p, const LinearMatroid& m, const DepthOptions& opt) {
  if (m.size() == 0) throw Error(ErrorCode::kEmptyMatroid, "matroid has no elements");
  const bool needs_lift = p == DepthParam::kCStar || p == DepthParam::kCStarDeletion;
  if (needs_lift && m.field().is_rational() && opt.cstar_moves == CStarMoves::kDirections)
    return cstar_over_q(p, m, opt);
  return run_search(p, m, opt);
}

DepthReport deletion_depth(const LinearMatroid& m, const DepthOptions& opt) {
  return depth_of(DepthParam::kDeletion, m, opt);
}
DepthReport contraction_depth(const LinearMatroid& m, const DepthOptions& opt) {
  return depth_of(DepthParam::kContraction, m, opt);
}
DepthReport cdd_depth(const LinearMatroid& m, const DepthOptions& opt) {
  return depth_of(DepthParam::kContractionDeletion, m, opt);
}
DepthReport cstar_depth(const LinearMatroid& m, const DepthOptions& opt) {
  return depth_of(DepthParam::kCStar, m, opt);
}
DepthReport csdd_depth(const LinearMatroid& m, const DepthOptions& opt) {
  return depth_of(DepthParam::kCStarDeletion, m, opt);
}
DepthReport principal_cstar_depth(const LinearMatroid& m, const DepthOptions& opt) {
  return depth_of(DepthParam::kPrincipalCStar, m, opt);
}

// ---------------------------------------------------------------------------
// Verification

std::size_t vectors_rank(const FieldSpec& field, const std::vector<std::vector<Rational>>& vs,
                         std::size_t dim) {
  return visit_field(field, [&](const auto& f) {
    FieldMatrix<std::decay_t<decltype(f)>> m(vs.size(), dim);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i].size() != dim) throw Error(ErrorCode::kDimensionMismatch, "vector length");
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = f.from_rational(vs[i][j]);
    }
    return rank_of(f, std::move(m));
  });
}

namespace {

void check_coverage(const LinearMatroid& m, const DecompositionTree& t) {
  auto labels = t.all_labels();
  std::sort(labels.begin(), labels.end());
  if (labels != m.elements()) {
    throw Error(ErrorCode::kLabelMismatch,
                "tree labels do not cover the ground set exactly once");
  }
}

bool allowed_op(TreeKind kind, EdgeOp op) {
  switch (kind) {
    case TreeKind::kDeletion: return op == EdgeOp::kDelete;
    case TreeKind::kContraction: return op == EdgeOp::kContractElement;
    case TreeKind::kContractionDeletion:
      return op == EdgeOp::kDelete || op == EdgeOp::kContractElement;
    case TreeKind::kCStarPrincipal: return op == EdgeOp::kContractElement;
    case TreeKind::kCStarGeneral:
      return op == EdgeOp::kContractSubspace || op == EdgeOp::kContractElement;
    case TreeKind::kCStarDeletion: return op != EdgeOp::kNone;
  }
  return false;
}

bool check_strict(const LinearMatroid& n, const DecompositionTree& t, std::size_t v) {
  const auto& node = t.node(v);
  ElementSet singles;
  std::vector<ElementSet> big;
  for (auto& c : components(n)) {
    if (c.size() == 1) {
      singles.push_back(c[0]);
    } else {
      big.push_back(std::move(c));
    }
  }
  std::sort(singles.begin(), singles.end());
  if (singles != node.labels) return false;
  if (node.children.size() != big.size()) return false;
  std::vector<bool> used(big.size(), false);
  for (auto c : node.children) {
    const ElementSet y = t.subtree_elements(c);
    auto it = std::find(big.begin(), big.end(), y);
    if (it == big.end()) return false;
    const auto idx = static_cast<std::size_t>(it - big.begin());
    if (used[idx]) return false;
    used[idx] = true;
    const auto& child = t.node(c);
    if (!allowed_op(t.kind(), child.op)) return false;
    const LinearMatroid part = n.restrict_to(y);
    const LinearMatroid next = child.op == EdgeOp::kDelete ? minor(part, {child.element}, {})
                                                           : minor(part, {}, {child.element});
    if (!check_strict(next, t, c)) return false;
  }
  return true;
}

// `base` has deletions applied but no quotients; `gens` are the generators on
// the path from the root.
bool check_cstar(const LinearMatroid& m, const LinearMatroid& base,
                 const std::vector<std::vector<Rational>>& gens, const DecompositionTree& t,
                 std::size_t v) {
  const auto& node = t.node(v);
  const LinearMatroid n = contract_subspace(base, gens);
  ElementSet loops, rest;
  for (auto e : n.elements()) (n.is_loop(e) ? loops : rest).push_back(e);
  if (loops != node.labels) return false;
  const auto comps = rest.empty() ? std::vector<ElementSet>{} : components(n.restrict_to(rest));
  const std::size_t dim = m.ambient_dim();
  const std::size_t path_rank = vectors_rank(m.field(), gens, dim);
  for (auto c : node.children) {
    const auto& child = t.node(c);
    if (!allowed_op(t.kind(), child.op)) return false;
    const ElementSet y = t.subtree_elements(c);
    // y must be a union of components of the non-loop part.
    for (const auto& comp : comps) {
      const auto hits = std::count_if(comp.begin(), comp.end(), [&](std::size_t e) {
        return std::binary_search(y.begin(), y.end(), e);
      });
      if (hits != 0 && static_cast<std::size_t>(hits) != comp.size()) return false;
    }
    for (auto e : y)
      if (!std::binary_search(rest.begin(), rest.end(), e)) return false;
    if (child.op == EdgeOp::kDelete) {
      ElementSet keep;
      for (auto e : y)
        if (e != child.element) keep.push_back(e);
      if (!check_cstar(m, base.restrict_to(keep), gens, t, c)) return false;
      continue;
    }
    std::vector<Rational> g = child.generator;
    if (child.op == EdgeOp::kContractElement) {
      if (!std::binary_search(y.begin(), y.end(), child.element)) return false;
      if (g.empty()) g = m.vector_of(child.element);
      if (g != m.vector_of(child.element)) return false;
    }
    if (g.size() != dim) return false;
    auto with_g = gens;
    with_g.push_back(g);
    if (vectors_rank(m.field(), with_g, dim) != path_rank + 1) return false;
    std::vector<std::vector<Rational>> span_y = gens;
    for (auto e : y) span_y.push_back(m.vector_of(e));
    const std::size_t ry = vectors_rank(m.field(), span_y, dim);
    span_y.push_back(g);
    if (vectors_rank(m.field(), span_y, dim) != ry) return false;
    ElementSet keep = y;
    if (child.op == EdgeOp::kContractElement) {
      keep.erase(std::find(keep.begin(), keep.end(), child.element));
    }
    if (!check_cstar(m, base.restrict_to(keep), with_g, t, c)) return false;
  }
  return true;
}

}  // namespace

bool verify_deletion_tree(const LinearMatroid& m, const DecompositionTree& t) {
  if (!counts_vertices(t.kind())) return false;
  check_coverage(m, t);
  return check_strict(m, t, 0);
}

bool verify_cstar_tree(const LinearMatroid& m, const DecompositionTree& t) {
  if (counts_vertices(t.kind())) return false;
  check_coverage(m, t);
  if (t.kind() == TreeKind::kCStarPrincipal) {
    const ElementSet edges = t.edge_elements_preorder();
    const std::size_t r = m.rank();
    if (edges.size() != r) return false;
    ElementSet sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (m.rank(sorted) != r) return false;
  }
  return check_cstar(m, m, {}, t, 0);
}

bool verify_tree(const LinearMatroid& m, const DecompositionTree& t) {
  return counts_vertices(t.kind()) ? verify_deletion_tree(m, t) : verify_cstar_tree(m, t);
}

// ---------------------------------------------------------------------------
// Principal contraction* tree from short circuits

namespace {

void build_principal(const LinearMatroid& m, const LinearMatroid& base,
                     const std::vector<std::vector<Rational>>& gens, ElementSet pending,
                     DecompositionTree& t, std::size_t v) {
  const LinearMatroid n = contract_subspace(base, gens);
  ElementSet rest;
  for (auto e : n.elements()) {
    if (n.is_loop(e)) {
      t.add_label(v, e);
    } else {
      rest.push_back(e);
    }
  }
  if (rest.empty()) return;
  for (const auto& comp : components(n.restrict_to(rest))) {
    ElementSet todo;
    for (auto e : pending)
      if (std::binary_search(comp.begin(), comp.end(), e)) todo.push_back(e);
    if (todo.empty()) {
      if (comp.size() == 1) {
        todo = comp;
      } else {
        todo = *smallest_circuit(n.restrict_to(comp));
      }
    }
    const std::size_t e = todo.front();
    todo.erase(todo.begin());
    const std::size_t child = t.add_child(v, EdgeOp::kContractElement, e, m.vector_of(e));
    ElementSet keep;
    for (auto x : comp)
      if (x != e) keep.push_back(x);
    auto next = gens;
    next.push_back(m.vector_of(e));
    build_principal(m, base.restrict_to(keep), next, std::move(todo), t, child);
  }
}

}  // namespace

PrincipalTree principal_cstar_tree(const LinearMatroid& m) {
  PrincipalTree out;
  out.largest_circuit = largest_circuit(m);
  build_principal(m, m, {}, {}, out.tree, 0);
  if (out.largest_circuit == 0) {
    out.note = "no circuits: every element is its own component";
    return out;
  }
  const std::size_t bound = out.largest_circuit * out.largest_circuit;
  if (out.tree.depth() > bound || !verify_cstar_tree(m, out.tree)) {
    DepthOptions opt;
    opt.budget = bound;
    DepthReport r = principal_cstar_depth(m, opt);
    if (r.exceeds_budget) {
      throw Error(ErrorCode::kVerificationFailed,
                  "no principal contraction* tree within the circuit bound");
    }
    out.tree = std::move(r.witness);
    out.used_fallback = true;
    out.note = "greedy tree exceeded the bound; exhaustive search used";
  }
  return out;
}

}  // namespace forge
