#include "forge/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "forge/depth.hpp"
#include "forge/error.hpp"
#include "forge/graph.hpp"
#include "forge/graver.hpp"
#include "forge/instances.hpp"
#include "forge/io.hpp"
#include "forge/linalg.hpp"
#include "forge/matroid.hpp"
#include "forge/precondition.hpp"

namespace forge {
namespace {

constexpr std::size_t kEquivalents = 10;
constexpr double kMaxCrossBoxPoints = 2e6;

// Order of GraverSet::vectors: l1 norm, then lexicographically descending.
bool graver_order(const IntVector& x, const IntVector& y) {
  const Integer nx = norm1(x), ny = norm1(y);
  if (nx != ny) return nx < ny;
  return x > y;
}

std::string where(std::size_t i, const RatMatrix& a) {
  std::string text = format_rmx(a);
  std::replace(text.begin(), text.end(), '\n', ';');
  return "case " + std::to_string(i) + " [" + text + "]";
}

RatMatrix kernel_matrix(const RatMatrix& a) {
  const auto ker = kernel_basis(a);
  RatMatrix k(ker.size(), a.cols());
  for (std::size_t i = 0; i < ker.size(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) k(i, j) = ker[i][j];
  return k;
}

LinearMatroid over_q(const RatMatrix& a) { return matroid_of(a, FieldSpec::rationals()); }

std::uint64_t sub_seed(std::uint64_t seed, std::size_t i, std::size_t j) {
  return seed * 1'000'003ULL + i * 101ULL + j;
}

SuiteReport suite_tdp(const ValidationConfig& cfg) {
  SuiteReport r;
  r.suite = "tdP";
  const auto corpus = random_corpus(cfg.seed, 200, 4, 6, 3);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& a = corpus[i];
    ++r.cases;
    const auto dd = deletion_depth(over_q(a));
    const RatMatrix out = primal_sparsify(a, dd.witness);
    const std::size_t td = primal_tree_depth(out);
    if (td != dd.value)
      r.violations.push_back(where(i, a) + ": td_P(A')=" + std::to_string(td) + " dd=" + std::to_string(dd.value));
    if (!row_space_equal(a, out)) r.violations.push_back(where(i, a) + ": output not equivalent");
    for (std::size_t j = 0; j < kEquivalents; ++j) {
      const RatMatrix b = random_row_ops(a, sub_seed(cfg.seed, i, j), 6);
      const std::size_t tb = primal_tree_depth(b);
      if (dd.value > tb)
        r.violations.push_back(where(i, a) + ": dd=" + std::to_string(dd.value) + " > td_P(B)=" + std::to_string(tb));
    }
  }
  return r;
}

SuiteReport suite_tdi(const ValidationConfig& cfg) {
  SuiteReport r;
  r.suite = "tdI";
  const auto corpus = random_corpus(cfg.seed, 200, 4, 6, 3);
  std::size_t upper_only = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& a = corpus[i];
    ++r.cases;
    DepthOptions opt;
    opt.gen_bound = cfg.gen_bound;
    const auto csdd = csdd_depth(over_q(a), opt);
    const RatMatrix out = incidence_sparsify(a, csdd.witness);
    const std::size_t td = incidence_tree_depth(out);
    const bool exact = csdd.exactness == Exactness::kExact;
    if (!exact) ++upper_only;
    if (td > csdd.value + 1 || (exact && td != csdd.value + 1))
      r.violations.push_back(where(i, a) + ": td_I(A')=" + std::to_string(td) + " csdd=" + std::to_string(csdd.value));
    if (!row_space_equal(a, out)) r.violations.push_back(where(i, a) + ": output not equivalent");
    if (!exact) continue;
    for (std::size_t j = 0; j < 3; ++j) {
      const RatMatrix b = random_row_ops(a, sub_seed(cfg.seed, i, j), 6);
      const std::size_t tb = incidence_tree_depth(b);
      if (csdd.value + 1 > tb)
        r.violations.push_back(where(i, a) + ": csdd+1 > td_I(B)=" + std::to_string(tb));
    }
  }
  r.details["upper_bound_only"] = upper_only;
  return r;
}

SuiteReport suite_orig_eq(const ValidationConfig& cfg) {
  SuiteReport r;
  r.suite = "orig-eq";
  const auto corpus = random_corpus(cfg.seed, 200, 4, 6, 3);
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& a = corpus[i];
    const auto m = over_q(a);
    if (m.rank() == 0) {
      ++skipped;
      continue;
    }
    ++r.cases;
    DepthOptions opt;
    opt.gen_bound = cfg.gen_bound;
    const auto csd = cstar_depth(m, opt);
    const RatMatrix out = dual_sparsify_from_tree(a, csd.witness);
    const std::size_t td = dual_tree_depth(out);
    const bool exact = csd.exactness == Exactness::kExact;
    if (td > csd.value || (exact && td != csd.value))
      r.violations.push_back(where(i, a) + ": td_D(A')=" + std::to_string(td) + " csd=" + std::to_string(csd.value));
    if (!exact) continue;
    for (std::size_t j = 0; j < 3; ++j) {
      const RatMatrix b = random_row_ops(a, sub_seed(cfg.seed, i, j), 6);
      const std::size_t tb = dual_tree_depth(b);
      if (csd.value > tb)
        r.violations.push_back(where(i, a) + ": csd > td_D(B)=" + std::to_string(tb));
    }
  }
  r.details["skipped_rank_zero"] = skipped;
  return r;
}

SuiteReport suite_equiv(const ValidationConfig& cfg) {
  SuiteReport r;
  r.suite = "equiv";
  const auto corpus = random_corpus(cfg.seed, 200, 4, 6, 3);
  std::size_t graver_checked = 0, box_certified = 0;
  struct TableRow {
    Integer c1, g1_min, g1_max;
    std::size_t count = 0;
  };
  std::map<std::string, TableRow> table;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& a = corpus[i];
    if (rank(a) == a.cols()) continue;
    ++r.cases;
    const auto c1 = *matrix_circuits(a).c1;
    const RatMatrix out = dual_sparsify_circuit(a);
    const std::size_t td = dual_tree_depth(out), ec = entry_complexity(out);
    if (Integer(static_cast<unsigned long>(td)) > c1 * c1)
      r.violations.push_back(where(i, a) + ": td_D(A')=" + std::to_string(td) + " > c1^2");
    if (ec > circuit_ec_bound(c1))
      r.violations.push_back(where(i, a) + ": ec(A')=" + std::to_string(ec) + " above log bound");
    if (!row_space_equal(a, out) ||
        !row_space_equal(kernel_matrix(a), kernel_matrix(out)))
      r.violations.push_back(where(i, a) + ": kernel not preserved");
    if (matrix_circuits(a).vectors != matrix_circuits(out).vectors)
      r.violations.push_back(where(i, a) + ": circuits changed");
    const RatMatrix b = random_row_ops(a, sub_seed(cfg.seed, i, 0), 6);
    const auto circ = matrix_circuits(a);
    if (circ.vectors != matrix_circuits(b).vectors)
      r.violations.push_back(where(i, a) + ": circuits changed under row operations");
    try {
      const auto ga = graver_basis(a), gb = graver_basis(b);
      ++graver_checked;
      if (ga.vectors != gb.vectors) r.violations.push_back(where(i, a) + ": Graver basis changed");
      for (const auto& c : circ.vectors)
        if (!std::binary_search(ga.vectors.begin(), ga.vectors.end(), c, graver_order))
          r.violations.push_back(where(i, a) + ": circuit missing from the Graver basis");
      // Second route: plain enumeration in a box one larger than g_inf.
      const long box = ga.g_inf->get_si() + 1;
      const double points = std::pow(2.0 * static_cast<double>(box) + 1, static_cast<double>(a.cols() - rank(a)));
      if (points <= kMaxCrossBoxPoints) {
        try {
          auto brute = graver_by_box(a, box);
          std::sort(brute.begin(), brute.end(), graver_order);
          ++box_certified;
          if (brute != ga.vectors) r.violations.push_back(where(i, a) + ": completion differs from box enumeration");
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kBoxTooSmall) throw;
        }
      }
      auto& row = table[circ.c1->get_str()];
      row.count += 1;
      row.g1_min = row.count == 1 ? *ga.g1 : std::min(row.g1_min, *ga.g1);
      row.g1_max = row.count == 1 ? *ga.g1 : std::max(row.g1_max, *ga.g1);
      row.c1 = *circ.c1;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBudgetExceeded) throw;
    }
  }
  r.details["graver_checked"] = graver_checked;
  r.details["box_certified"] = box_certified;
  std::vector<const TableRow*> rows;
  for (const auto& [key, row] : table) rows.push_back(&row);
  std::sort(rows.begin(), rows.end(), [](const TableRow* x, const TableRow* y) { return x->c1 < y->c1; });
  nlohmann::json t = nlohmann::json::array();
  for (const auto* row : rows)
    t.push_back({{"c1", row->c1.get_str()}, {"cases", row->count}, {"g1_min", row->g1_min.get_str()},
                 {"g1_max", row->g1_max.get_str()}});
  r.details["g1_vs_c1"] = t;
  return r;
}

SuiteReport suite_circuit_bound(const ValidationConfig& cfg) {
  SuiteReport r;
  r.suite = "circuit-bound";
  std::mt19937_64 rng(cfg.seed);
  std::size_t free = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const RatMatrix a = random_int_matrix(rng, 4, 8, 3);
    const auto m = over_q(a);
    ++r.cases;
    const auto pt = principal_cstar_tree(m);
    if (!verify_cstar_tree(m, pt.tree)) r.violations.push_back(where(i, a) + ": principal tree rejected");
    const std::size_t k = pt.largest_circuit;
    if (k == 0) {
      ++free;
      continue;
    }
    DepthOptions opt;
    opt.gen_bound = cfg.gen_bound;
    const auto csd = cstar_depth(m, opt);
    const std::size_t lower = bit_length(Integer(static_cast<unsigned long>(k - 1)));  // ceil(log2 k)
    if (csd.exactness == Exactness::kExact && csd.value < lower)
      r.violations.push_back(where(i, a) + ": csd=" + std::to_string(csd.value) + " below log2 k");
    if (csd.value > k * k) r.violations.push_back(where(i, a) + ": csd above k^2");
    if (pt.tree.depth() > k * k) r.violations.push_back(where(i, a) + ": principal tree deeper than k^2");
  }
  r.details["without_circuits"] = free;
  return r;
}

SuiteReport suite_graph_reduction(const ValidationConfig& cfg) {
  SuiteReport r;
  r.suite = "graph-reduction";
  const Bipartition parts{{0, 1}, {2, 3}};
  for (int mask = 0; mask < 16; ++mask) {
    Graph g(4);
    for (int e = 0; e < 4; ++e)
      if ((mask >> e) & 1) g.add_edge(static_cast<std::size_t>(e / 2), static_cast<std::size_t>(2 + e % 2));
    for (std::size_t k = 0; k <= 2; ++k) {
      ++r.cases;
      const bool balanced = balanced_independent_set(g, parts, k);
      bool verdicts[2];
      std::size_t values[2];
      const HardnessVariant variants[2] = {HardnessVariant::kCStar, HardnessVariant::kCd2M};
      for (int v = 0; v < 2; ++v) {
        const auto inst = hardness_instance(g, parts, k, cfg.field, variants[v]);
        DepthOptions opt;
        opt.budget = inst.threshold;
        opt.gen_bound = cfg.gen_bound;
        const auto rep = depth_of(inst.param, inst.matroid, opt);
        verdicts[v] = !rep.exceeds_budget && rep.value <= inst.threshold;
        values[v] = rep.value;
      }
      if (verdicts[0] != balanced || verdicts[1] != balanced) {
        r.violations.push_back("edges " + std::to_string(mask) + " k=" + std::to_string(k) +
                               ": balanced=" + std::to_string(balanced) + " csd=" + std::to_string(values[0]) +
                               " cd(2M)=" + std::to_string(values[1]));
      }
    }
  }
  r.details["field"] = cfg.field.to_string();
  return r;
}

SuiteReport suite_a_contract(const ValidationConfig& cfg) {
  SuiteReport r;
  r.suite = "a-contract";
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng() % 5;
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (rng() % 2) g.add_edge(u, v);
    std::vector<std::vector<Rational>> gens;
    const std::size_t count = rng() % 4;
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<Rational> w(n);
      const auto kind = rng() % 4;
      const std::size_t u = rng() % n, v = rng() % n;
      if (kind == 0) {
        w[u] = 1;
      } else if (kind == 1) {
        w[u] += 1;
        w[v] -= static_cast<long>(1 + rng() % 2);
      } else {
        for (auto& x : w) x = static_cast<long>(rng() % 5) - 2;
      }
      gens.push_back(std::move(w));
    }
    ++r.cases;
    const auto lg = matroid_from_graph(g, FieldSpec::rationals());
    const std::size_t mc = nonloop_components(contract_subspace(lg.matroid, gens));
    const std::size_t gc = quotient_graph(g, gens, FieldSpec::rationals()).components().size();
    if (mc > gc) {
      r.violations.push_back("case " + std::to_string(i) + ": matroid components " + std::to_string(mc) +
                             " > graph components " + std::to_string(gc));
    }
  }
  return r;
}

SuiteReport suite_gn(const ValidationConfig& cfg) {
  SuiteReport r;
  r.suite = "gn";
  for (std::size_t n = 1; n <= cfg.max_gn; ++n) {
    ++r.cases;
    const auto g = gn_family(n);
    const auto paths = rb_path_lengths(g);
    const auto cycles = cycle_lengths(g);
    nlohmann::json d{{"vertices", g.num_vertices},
                     {"edges", g.edges.size()},
                     {"min_path", paths.front()},
                     {"max_path", paths.back()},
                     {"max_circuit", cycles.back()}};
    if (paths.front() < n || paths.back() > 2 * n)
      r.violations.push_back("n=" + std::to_string(n) + ": path length outside [n, 2n]");
    if (cycles.back() > 4 * n) r.violations.push_back("n=" + std::to_string(n) + ": circuit longer than 4n");
    if (n <= 2) {
      const auto cd = contraction_depth(g.matroid());
      d["cd"] = cd.value;
      if (cd.value < n * (n - 1) / 2) r.violations.push_back("n=" + std::to_string(n) + ": cd below C(n,2)");
    }
    r.details[std::to_string(n)] = d;
  }
  return r;
}

}  // namespace

nlohmann::json SuiteReport::to_json() const {
  return {{"suite", suite},
          {"cases", cases},
          {"passed", passed()},
          {"violations", violations},
          {"details", details}};
}

std::vector<std::string> suite_names() {
  return {"tdP", "tdI", "orig-eq", "equiv", "circuit-bound", "graph-reduction", "a-contract", "gn"};
}

SuiteReport run_suite(const std::string& suite, const ValidationConfig& cfg) {
  if (suite == "tdP") return suite_tdp(cfg);
  if (suite == "tdI") return suite_tdi(cfg);
  if (suite == "orig-eq") return suite_orig_eq(cfg);
  if (suite == "equiv") return suite_equiv(cfg);
  if (suite == "circuit-bound") return suite_circuit_bound(cfg);
  if (suite == "graph-reduction") return suite_graph_reduction(cfg);
  if (suite == "a-contract") return suite_a_contract(cfg);
  if (suite == "gn") return suite_gn(cfg);
  throw Error(ErrorCode::kBadParams, "unknown suite " + suite);
}

RatMatrix random_int_matrix(std::mt19937_64& rng, std::size_t max_rows, std::size_t max_cols, long bound) {
  const std::size_t rows = 1 + rng() % max_rows, cols = 1 + rng() % max_cols;
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  RatMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = static_cast<long>(rng() % span) - bound;
  return a;
}

std::vector<RatMatrix> random_corpus(std::uint64_t seed, std::size_t count, std::size_t max_rows,
                                     std::size_t max_cols, long bound) {
  std::mt19937_64 rng(seed);
  std::vector<RatMatrix> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_int_matrix(rng, max_rows, max_cols, bound));
  return out;
}

}  // namespace forge
