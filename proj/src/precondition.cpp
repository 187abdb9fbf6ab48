#include "forge/precondition.hpp"

#include <algorithm>
#include <numeric>

#include "forge/error.hpp"
#include "forge/field.hpp"
#include "forge/graph.hpp"
#include "forge/graver.hpp"
#include "forge/io.hpp"
#include "forge/linalg.hpp"
#include "forge/matroid.hpp"

namespace forge {
namespace {

RatMatrix identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

RatMatrix columns_of(const RatMatrix& a, std::size_t from, std::size_t to) {
  RatMatrix out(a.rows(), to - from);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = from; j < to; ++j) out(i, j - from) = a(i, j);
  return out;
}

RatMatrix select_columns(const RatMatrix& a, const ElementSet& cols) {
  RatMatrix out(a.rows(), cols.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(i, cols[j]);
  return out;
}

RatMatrix select_rows(const RatMatrix& a, std::size_t from, std::size_t to) {
  RatMatrix out(to - from, a.cols());
  for (std::size_t i = from; i < to; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i - from, j) = a(i, j);
  return out;
}

/// Invertible S such that S * [cols] has the unit vectors e_0, e_1, ... in
/// those columns.
RatMatrix reducer(const RatMatrix& a, const std::vector<std::size_t>& cols) {
  const RatMatrix r = reduce_basis_to_identity(hstack(a, identity(a.rows())), cols);
  return columns_of(r, a.cols(), a.cols() + a.rows());
}

/// Column positions (in `cols` order) forming a basis of their span.
std::vector<std::size_t> basis_among(const RatMatrix& a, const std::vector<std::size_t>& cols) {
  const auto e = rref(select_columns(a, cols));
  std::vector<std::size_t> out;
  for (auto p : e.pivots) out.push_back(cols[p]);
  return out;
}

bool divides(const Integer& x, const Integer& k) { return x != 0 && k % x == 0; }

/// Rows (as functionals on the original coordinates) of an equivalent
/// matrix for the minor at vertex v of a contraction*-deletion tree.
/// `p` maps original coordinates to the current block, `cols` are the
/// block's live columns.
RatMatrix incidence_rows(const RatMatrix& a0, const DecompositionTree& t, const RatMatrix& p,
                         const ElementSet& cols, std::size_t v) {
  if (p.rows() == 0) return p;
  const RatMatrix block = p * select_columns(a0, cols);
  const auto& node = t.node(v);
  // Children split the block into unions of components; reduce a basis of
  // each child's columns to unit vectors so the blocks decouple.
  std::vector<ElementSet> child_cols;
  std::vector<std::size_t> all_basis, offsets{0};
  for (auto c : node.children) {
    ElementSet sub = t.subtree_elements(c);
    std::vector<std::size_t> pos;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (std::binary_search(sub.begin(), sub.end(), cols[j])) pos.push_back(j);
    const auto b = basis_among(block, pos);
    all_basis.insert(all_basis.end(), b.begin(), b.end());
    offsets.push_back(all_basis.size());
    ElementSet mine;
    for (auto j : pos) mine.push_back(cols[j]);
    child_cols.push_back(std::move(mine));
  }
  RatMatrix s;
  try {
    s = reducer(block, all_basis);
  } catch (const Error&) {
    throw Error(ErrorCode::kInvalidTrace, "child column sets are not independent blocks");
  }
  const RatMatrix sp = s * p;
  RatMatrix out(0, p.cols());
  for (std::size_t k = 0; k < node.children.size(); ++k) {
    const std::size_t c = node.children[k];
    const auto& child = t.node(c);
    RatMatrix pc = select_rows(sp, offsets[k], offsets[k + 1]);
    ElementSet cc = child_cols[k];
    if (child.op == EdgeOp::kDelete) {
      cc.erase(std::remove(cc.begin(), cc.end(), child.element), cc.end());
      out = vstack(out, incidence_rows(a0, t, pc, cc, c));
      continue;
    }
    if (child.op != EdgeOp::kContractSubspace && child.op != EdgeOp::kContractElement)
      throw Error(ErrorCode::kInvalidTrace, "unexpected edge operation");
    RatMatrix w(child.generator.size(), 1);
    for (std::size_t i = 0; i < child.generator.size(); ++i) w(i, 0) = child.generator[i];
    const RatMatrix local = pc * w;
    RatMatrix sw;
    try {
      sw = reducer(local, {0});
    } catch (const Error&) {
      throw Error(ErrorCode::kInvalidTrace, "generator vanishes in its block");
    }
    const RatMatrix q = sw * pc;
    out = vstack(out, select_rows(q, 0, 1));
    out = vstack(out, incidence_rows(a0, t, select_rows(q, 1, q.rows()), cc, c));
  }
  // Rows beyond the children's bases vanish on every live column.
  return vstack(out, select_rows(sp, all_basis.size(), sp.rows()));
}

}  // namespace

std::size_t circuit_ec_bound(const Integer& k) { return 2 * bit_length(k); }

Kappa0 kappa0_of(std::size_t d, std::size_t e, const Integer& limit) {
  if (d < 1 || e < 1) throw Error(ErrorCode::kBadParams, "kappa0 needs d >= 1 and e >= 1");
  // d! above 20 makes 2^(e d!) dwarf any limit we accept.
  if (d > 20) throw Error(ErrorCode::kBudgetExceeded, "k0 bound too large");
  std::uint64_t fact = 1;
  for (std::size_t i = 2; i <= d; ++i) fact *= i;
  const std::size_t limit_bits = bit_length(limit);
  if (e * fact > limit_bits + 1) throw Error(ErrorCode::kBudgetExceeded, "k0 bound too large");
  Kappa0 out;
  out.d = d;
  out.e = e;
  Integer k0;
  mpz_ui_pow_ui(k0.get_mpz_t(), 2, e * fact);
  if (fact >= 2) {
    Integer f(static_cast<unsigned long>(fact)), pw;
    if (fact / 2 * bit_length(f) > limit_bits + 1) throw Error(ErrorCode::kBudgetExceeded, "k0 bound too large");
    mpz_pow_ui(pw.get_mpz_t(), f.get_mpz_t(), fact / 2);
    k0 *= pw;
  }
  if (k0 > limit) throw Error(ErrorCode::kBudgetExceeded, "k0 bound " + k0.get_str() + " above limit");
  out.k0_bound = k0;
  // lcm(1..k0) is the product of the largest prime powers up to k0.
  const unsigned long n = k0.get_ui();
  std::vector<bool> composite(n + 1, false);
  std::vector<Integer> factors;
  for (unsigned long q = 2; q <= n; ++q) {
    if (composite[q]) continue;
    for (unsigned long z = q * q; z <= n; z += q) composite[z] = true;
    unsigned long pw = q;
    while (pw <= n / q) pw *= q;
    factors.emplace_back(pw);
  }
  while (factors.size() > 1) {
    std::vector<Integer> next;
    for (std::size_t i = 0; i + 1 < factors.size(); i += 2) next.push_back(factors[i] * factors[i + 1]);
    if (factors.size() % 2) next.push_back(factors.back());
    factors = std::move(next);
  }
  out.kappa0 = factors.empty() ? Integer(1) : factors[0];
  return out;
}

RatMatrix primal_sparsify(const RatMatrix& a, const DecompositionTree& t) {
  const auto m = matroid_of(a, FieldSpec::rationals());
  bool ok = false;
  try {
    ok = verify_deletion_tree(m, t);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidTree, e.what());
  }
  if (!ok) throw Error(ErrorCode::kInvalidTree, "not a deletion tree of M(A)");
  std::vector<std::size_t> basis;
  for (auto v : t.preorder())
    for (auto x : t.node(v).labels)
      if (!m.is_loop(x)) basis.push_back(x);
  return reduce_basis_to_identity(a, basis);
}

RatMatrix dual_sparsify_circuit(const RatMatrix& a) {
  if (rank(a) == a.cols()) throw Error(ErrorCode::kNoCircuits, "ker A = {0}");
  const auto pt = principal_cstar_tree(matroid_of(a, FieldSpec::rationals()));
  const auto x = pt.tree.edge_elements_preorder();
  return reduce_basis_to_identity(a, x);
}

RatMatrix dual_sparsify_from_tree(const RatMatrix& a, const DecompositionTree& t) {
  const auto m = matroid_of(a, FieldSpec::rationals());
  bool ok = false;
  try {
    ok = verify_cstar_tree(m, t);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidTree, e.what());
  }
  if (!ok) throw Error(ErrorCode::kInvalidTree, "not a contraction* tree of M(A)");
  const auto gens = t.generators_preorder();
  const std::size_t r = m.rank();
  if (gens.size() != r) throw Error(ErrorCode::kInvalidTree, "generators do not form a basis");
  RatMatrix g(a.rows(), r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) g(i, j) = gens[j][i];
  std::vector<std::size_t> cols(r);
  std::iota(cols.begin(), cols.end(), 0);
  RatMatrix reduced;
  try {
    reduced = reduce_basis_to_identity(hstack(g, a), cols);
  } catch (const Error&) {
    throw Error(ErrorCode::kInvalidTree, "generators are dependent");
  }
  return columns_of(reduced, r, r + a.cols());
}

RatMatrix incidence_sparsify(const RatMatrix& a, const DecompositionTree& trace) {
  if (trace.kind() != TreeKind::kCStarDeletion)
    throw Error(ErrorCode::kInvalidTrace, "expected a contraction*-deletion tree");
  const auto m = matroid_of(a, FieldSpec::rationals());
  bool ok = false;
  try {
    ok = verify_cstar_tree(m, trace);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidTrace, e.what());
  }
  if (!ok) throw Error(ErrorCode::kInvalidTrace, "not a contraction*-deletion tree of M(A)");
  const RatMatrix rows = incidence_rows(a, trace, identity(a.rows()), m.elements(), 0);
  if (rows.rows() != a.rows() || rank(rows) != a.rows())
    throw Error(ErrorCode::kInvalidTrace, "construction lost rows");
  return rows * a;
}

PreconditionOutcome alg_tdP(const RatMatrix& a, std::size_t d, std::size_t e,
                            std::optional<Integer> kappa_override) {
  if (rank(a) != a.rows()) throw Error(ErrorCode::kBadParams, "alg_tdP needs full row rank");
  const Integer kappa = kappa_override ? *kappa_override : kappa0_of(d, e).kappa0;
  if (kappa < 1) throw Error(ErrorCode::kBadParams, "kappa must be positive");
  PreconditionOutcome out;
  auto reject = [&](std::string why) {
    out.verdict = Verdict::kNotEquivalent;
    out.reason = std::move(why);
    return out;
  };

  const auto ech = rref(a);
  for (const auto& q : ech.matrix.data()) {
    if (q == 0) continue;
    if (!divides(abs(q.get_num()), kappa) || !divides(q.get_den(), kappa))
      return reject("entry " + to_string(q) + " of the diagonalized matrix does not divide kappa");
  }
  RatMatrix a0 = ech.matrix;
  for (std::size_t i = 0; i < a0.rows(); ++i)
    for (std::size_t j = 0; j < a0.cols(); ++j) a0(i, j) *= kappa;

  const Integer bound = kappa * kappa;
  if (bound >= (Integer(1) << 32)) throw Error(ErrorCode::kBudgetExceeded, "kappa^2 too large for GF(p)");
  const std::uint64_t p = next_prime(bound.get_ui());
  if (p >= (std::uint64_t{1} << 32)) throw Error(ErrorCode::kBudgetExceeded, "prime above 2^32");

  DepthOptions opt;
  opt.budget = d;
  const auto mp = matroid_of(a0, FieldSpec::prime(p));
  const auto rep = deletion_depth(mp, opt);
  if (rep.exceeds_budget)
    return reject("deletion-depth over GF(" + std::to_string(p) + ") exceeds " + std::to_string(d));
  if (!verify_deletion_tree(matroid_of(a0, FieldSpec::rationals()), rep.witness))
    return reject("GF(" + std::to_string(p) + ") tree is not valid over Q");

  RatMatrix out_m = primal_sparsify(a, rep.witness);
  for (const auto& q : out_m.data()) {
    if (abs(q.get_num()) > kappa || q.get_den() > kappa)
      return reject("entry " + to_string(q) + " exceeds kappa");
  }
  out.verdict = Verdict::kTransformed;
  out.matrix = std::move(out_m);
  out.certificate = rep.witness;
  out.td = primal_tree_depth(out.matrix);
  out.ec = entry_complexity(out.matrix);
  return out;
}

PreconditionOutcome alg_tdD(const RatMatrix& a, std::size_t d, std::size_t /*e*/,
                            std::optional<Integer> k_override, const DepthOptions& opt) {
  PreconditionOutcome out;
  if (rank(a) == a.cols()) {
    std::vector<std::size_t> all(a.cols());
    std::iota(all.begin(), all.end(), 0);
    out.matrix = reduce_basis_to_identity(a, all);
    out.td = dual_tree_depth(out.matrix);
    out.ec = entry_complexity(out.matrix);
    if (*out.td > d) {
      out.reason = "dual tree-depth of the unit form exceeds d";
      return out;
    }
    out.verdict = Verdict::kTransformed;
    return out;
  }
  const auto circuits = matrix_circuits(a);
  out.c1 = circuits.c1;
  const Integer k = k_override ? *k_override : *circuits.c1;

  const RatMatrix a1 = dual_sparsify_circuit(a);
  const std::size_t td1 = dual_tree_depth(a1);
  const std::size_t ec1 = entry_complexity(a1);
  if (Integer(static_cast<unsigned long>(td1)) > k * k || ec1 > circuit_ec_bound(k)) {
    out.reason = "c1(A) exceeds " + k.get_str();
    return out;
  }

  const auto m = matroid_of(a, FieldSpec::rationals());
  const auto csd = cstar_depth(m, opt);
  out.exactness = csd.exactness;
  if (csd.value > d) {
    if (csd.exactness != Exactness::kExact)
      throw Error(ErrorCode::kBudgetOpen, "only an upper bound " + std::to_string(csd.value) +
                                              " on contraction*-depth is known");
    out.reason = "optimal dual tree-depth is " + std::to_string(csd.value);
    out.td = csd.value;
    return out;
  }
  out.matrix = dual_sparsify_from_tree(a, csd.witness);
  out.certificate = csd.witness;
  out.td = dual_tree_depth(out.matrix);
  out.ec = entry_complexity(out.matrix);
  out.verdict = Verdict::kTransformed;
  return out;
}

nlohmann::json PreconditionOutcome::to_json() const {
  nlohmann::json j;
  j["verdict"] = verdict == Verdict::kTransformed ? "transformed" : "not-equivalent";
  if (verdict == Verdict::kTransformed) {
    j["matrix"] = format_rmx(matrix);
  } else {
    j["matrix"] = nullptr;
  }
  j["certificate"] = certificate ? certificate->to_json() : nlohmann::json(nullptr);
  if (!reason.empty()) j["reason"] = reason;
  nlohmann::json b;
  b["td"] = td ? nlohmann::json(*td) : nlohmann::json(nullptr);
  b["ec"] = ec ? nlohmann::json(*ec) : nlohmann::json(nullptr);
  b["c1"] = c1 ? nlohmann::json(c1->get_str()) : nlohmann::json(nullptr);
  j["bounds"] = b;
  j["exactness"] = exactness_name(exactness);
  return j;
}

}  // namespace forge
