#include <doctest.h>

#include "forge/error.hpp"
#include "forge/graph.hpp"
#include "forge/graver.hpp"
#include "forge/linalg.hpp"
#include "forge/precondition.hpp"
#include "helpers.hpp"

using namespace forge;

namespace {

LinearMatroid mq(const RatMatrix& a) { return matroid_of(a, FieldSpec::rationals()); }

Integer lcm_upto(long n) {
  Integer l = 1;
  for (long i = 2; i <= n; ++i) {
    Integer g;
    mpz_gcd_ui(g.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(i));
    l = l / g * i;
  }
  return l;
}

// Random integer matrix with full row rank, or nullopt.
std::optional<RatMatrix> full_row_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  const auto a = matrix_from_ints(fixtures::random_ints(rng, rows, cols, 2));
  if (rank(a) != a.rows() || a.rows() > a.cols()) return std::nullopt;
  return a;
}

}  // namespace

TEST_CASE("kappa0 values") {
  const auto a = kappa0_of(1, 1), b = kappa0_of(2, 1), c = kappa0_of(1, 2);
  CHECK(a.k0_bound == 2);
  CHECK(a.kappa0 == 2);
  CHECK(b.k0_bound == 8);
  CHECK(b.kappa0 == 840);
  CHECK(c.k0_bound == 4);
  CHECK(c.kappa0 == 12);
  for (const auto& k : {a, b, c}) CHECK(k.kappa0 == lcm_upto(k.k0_bound.get_si()));
  const auto d3 = kappa0_of(3, 1, Integer(1) << 20);
  CHECK(d3.k0_bound == 13824);  // 2^6 * 6^3
  CHECK(kappa0_of(3, 2).k0_bound == 884736);
  try {
    kappa0_of(4, 1);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBudgetExceeded);
  }
  CHECK_THROWS_AS(kappa0_of(0, 1), Error);
}

TEST_CASE("circuit entry-complexity bound") {
  CHECK(circuit_ec_bound(Integer(7)) == 6);
  CHECK(circuit_ec_bound(Integer(8)) == 8);
  CHECK(circuit_ec_bound(Integer(1)) == 2);
}

TEST_CASE("primal sparsification") {
  const auto id = RatMatrix::identity(3);
  CHECK(primal_sparsify(id, deletion_depth(mq(id)).witness) == id);
  const auto band = matrix_from_ints(fixtures::band());
  const auto dd = deletion_depth(mq(band));
  const auto out = primal_sparsify(band, dd.witness);
  CHECK(row_space_equal(band, out));
  CHECK(primal_tree_depth(out) == dd.value);
  // A tree for another matroid is rejected.
  CHECK_THROWS_AS(primal_sparsify(band, deletion_depth(mq(RatMatrix::identity(3))).witness), Error);

  std::mt19937_64 rng(51);
  for (int it = 0; it < 80; ++it) {
    const auto a = full_row_rank(rng, 3, 6);
    if (!a) continue;
    const auto r = deletion_depth(mq(*a));
    const auto b = primal_sparsify(*a, r.witness);
    CHECK(row_space_equal(*a, b));
    CHECK(primal_tree_depth(b) <= r.witness.height());
    // No equivalent matrix beats the deletion-depth.
    CHECK(primal_tree_depth(random_row_ops(*a, static_cast<std::uint64_t>(it), 4)) >= r.value);
  }
}

TEST_CASE("dual sparsification from circuits") {
  const auto band = matrix_from_ints(fixtures::band());
  const auto out = dual_sparsify_circuit(band);
  CHECK(row_space_equal(band, out));
  CHECK(dual_tree_depth(out) <= 49);
  CHECK(entry_complexity(out) <= 6);
  const auto t5 = dual_sparsify_circuit(matrix_from_ints(fixtures::incidence_t5()));
  CHECK(entry_complexity(t5) <= 8);
  try {
    dual_sparsify_circuit(RatMatrix::identity(2));
    FAIL("expected NoCircuits");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoCircuits);
  }

  std::mt19937_64 rng(52);
  for (int it = 0; it < 80; ++it) {
    const auto a = matrix_from_ints(fixtures::random_ints(rng, 4, 7, 2));
    const auto cs = matrix_circuits(a);
    if (!cs.c1) continue;
    const auto b = dual_sparsify_circuit(a);
    const auto c1 = *cs.c1;
    CHECK(row_space_equal(a, b));
    CHECK(Integer(dual_tree_depth(b)) <= c1 * c1);
    CHECK(entry_complexity(b) <= circuit_ec_bound(c1));
    CHECK(matrix_circuits(b).vectors == cs.vectors);
  }
}

TEST_CASE("dual sparsification from an optimal tree reaches contraction*-depth") {
  const auto left = matrix_from_ints(fixtures::left_example());
  const auto out = dual_sparsify_from_tree(left, cstar_depth(mq(left)).witness);
  CHECK(row_space_equal(left, out));
  CHECK(dual_tree_depth(out) == 2);

  std::mt19937_64 rng(53);
  for (int it = 0; it < 80; ++it) {
    const auto a = matrix_from_ints(fixtures::random_ints(rng, 4, 7, 2));
    if (rank(a) == 0) continue;
    const auto r = cstar_depth(mq(a));
    REQUIRE(r.exactness == Exactness::kExact);
    const auto b = dual_sparsify_from_tree(a, r.witness);
    CHECK(row_space_equal(a, b));
    CHECK(dual_tree_depth(b) == r.value);
    const auto pt = principal_cstar_tree(mq(a));
    CHECK(dual_tree_depth(dual_sparsify_from_tree(a, pt.tree)) <= pt.tree.depth());
  }
}

TEST_CASE("incidence sparsification") {
  const auto zero = matrix_from_ints({{0, 0}, {0, 0}});
  const auto z = incidence_sparsify(zero, csdd_depth(mq(zero)).witness);
  CHECK(incidence_tree_depth(z) == 1);
  const auto col = matrix_from_ints({{2}, {0}, {3}});
  CHECK(incidence_tree_depth(incidence_sparsify(col, csdd_depth(mq(col)).witness)) == 2);

  const auto t5 = matrix_from_ints(fixtures::incidence_t5());
  const auto r = csdd_depth(mq(t5));
  const auto out = incidence_sparsify(t5, r.witness);
  CHECK(row_space_equal(t5, out));
  CHECK(incidence_tree_depth(out) == r.value + 1);

  std::mt19937_64 rng(54);
  for (int it = 0; it < 80; ++it) {
    const auto a = matrix_from_ints(fixtures::random_ints(rng, 4, 6, 2));
    const auto rr = csdd_depth(mq(a));
    REQUIRE(rr.exactness == Exactness::kExact);
    const auto b = incidence_sparsify(a, rr.witness);
    CHECK(row_space_equal(a, b));
    CHECK(incidence_tree_depth(b) == rr.value + 1);
    CHECK(incidence_tree_depth(random_row_ops(a, static_cast<std::uint64_t>(it), 4)) >= rr.value + 1);
  }
  CHECK_THROWS_AS(incidence_sparsify(t5, csdd_depth(mq(zero)).witness), Error);
}

TEST_CASE("primal pipeline") {
  const auto id = alg_tdP(RatMatrix::identity(2), 1, 1);
  CHECK(id.verdict == Verdict::kTransformed);
  CHECK(id.matrix == RatMatrix::identity(2));
  const auto band = matrix_from_ints(fixtures::band());
  const auto ok = alg_tdP(band, 2, 2, Integer(4));
  REQUIRE(ok.verdict == Verdict::kTransformed);
  CHECK(row_space_equal(band, ok.matrix));
  CHECK(primal_tree_depth(ok.matrix) <= 2);
  CHECK(alg_tdP(band, 1, 1).verdict == Verdict::kNotEquivalent);
  CHECK(alg_tdP(band, 1, 3).verdict == Verdict::kNotEquivalent);
  try {
    alg_tdP(matrix_from_ints({{1, 2}, {2, 4}}), 2, 1);
    FAIL("expected BadParams");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBadParams);
  }
}

TEST_CASE("dual pipeline") {
  const auto left = matrix_from_ints(fixtures::left_example());
  const auto ok = alg_tdD(left, 2, 3);
  REQUIRE(ok.verdict == Verdict::kTransformed);
  CHECK(dual_tree_depth(ok.matrix) == 2);
  CHECK(row_space_equal(left, ok.matrix));
  CHECK(ok.to_json()["verdict"].is_string());
  CHECK(alg_tdD(left, 1, 3).verdict == Verdict::kNotEquivalent);
  // Tiny k: the circuit bound is exceeded.
  CHECK(alg_tdD(left, 2, 3, Integer(1)).verdict == Verdict::kNotEquivalent);
  const auto free = alg_tdD(matrix_from_ints({{1, 1}, {0, 1}, {0, 0}}), 1, 1);
  REQUIRE(free.verdict == Verdict::kTransformed);
  CHECK(row_space_equal(matrix_from_ints({{1, 1}, {0, 1}, {0, 0}}), free.matrix));
  CHECK(free.matrix.rows() == 3);
}
