#include <doctest.h>

#include <algorithm>

#include "forge/error.hpp"
#include "forge/matroid.hpp"
#include "forge/depth.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

oracle::Mask mask_of(const ElementSet& s) {
  oracle::Mask m = 0;
  for (auto e : s) m |= oracle::bit(e);
  return m;
}

ElementSet set_of(oracle::Mask m, std::size_t n) {
  ElementSet s;
  for (std::size_t e = 0; e < n; ++e)
    if (m & oracle::bit(e)) s.push_back(e);
  return s;
}

FieldSpec field_for(long p) { return p ? FieldSpec::prime(static_cast<std::uint64_t>(p)) : FieldSpec::rationals(); }

}  // namespace

TEST_CASE("circuits, components and ranks agree with rank tables") {
  std::mt19937_64 rng(21);
  for (long p : {0L, 2L, 3L}) {
    for (int it = 0; it < 80; ++it) {
      const auto a = fixtures::random_ints(rng, 4, 7, 2);
      const std::size_t n = a[0].size();
      const auto m = matroid_of(matrix_from_ints(a), field_for(p));
      const auto table = oracle::rank_table(a, n, p);
      for (oracle::Mask x = 0; x <= table.ground(); ++x) CHECK(m.rank(set_of(x, n)) == table.r(x));
      const oracle::Minor whole{&table, table.ground(), 0};
      std::vector<oracle::Mask> expect = oracle::circuits(whole), got;
      for (const auto& c : matroid_circuits(m)) got.push_back(mask_of(c));
      std::sort(expect.begin(), expect.end());
      std::sort(got.begin(), got.end());
      CHECK(got == expect);
      std::vector<oracle::Mask> ec = oracle::components(whole), gc;
      for (const auto& c : components(m)) gc.push_back(mask_of(c));
      std::sort(ec.begin(), ec.end());
      std::sort(gc.begin(), gc.end());
      CHECK(gc == ec);
    }
  }
}

TEST_CASE("dual rank function") {
  std::mt19937_64 rng(22);
  for (int it = 0; it < 60; ++it) {
    const auto a = fixtures::random_ints(rng, 4, 7, 2);
    const std::size_t n = a[0].size();
    const auto m = matroid_of(matrix_from_ints(a), FieldSpec::rationals());
    const auto d = dualize(m);
    const std::size_t r = m.rank();
    for (oracle::Mask x = 0; x < oracle::bit(n); ++x) {
      const ElementSet s = set_of(x, n), rest = set_of(~x & (oracle::bit(n) - 1), n);
      CHECK(d.rank(s) == s.size() - r + m.rank(rest));
    }
  }
}

TEST_CASE("minors follow the rank formula") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 60; ++it) {
    const auto a = fixtures::random_ints(rng, 4, 6, 2);
    const std::size_t n = a[0].size();
    if (n < 3) continue;
    const auto m = matroid_of(matrix_from_ints(a), FieldSpec::rationals());
    const ElementSet del{0}, con{1};
    const auto mn = minor(m, del, con);
    CHECK(mn.size() == n - 2);
    CHECK_FALSE(mn.is_live(0));
    for (oracle::Mask x = 0; x < oracle::bit(n); ++x) {
      if (x & 3) continue;
      ElementSet s = set_of(x, n), sc = s;
      sc.push_back(1);
      std::sort(sc.begin(), sc.end());
      CHECK(mn.rank(s) == m.rank(sc) - m.rank({1}));
    }
    // Contracting an element's own vector is the element contraction.
    const auto q = contract_subspace(m.delete_elements(del), {m.vector_of(1)});
    CHECK(matroid_equal(q.restrict_to(mn.elements()), mn));
  }
  const auto m = matroid_of(matrix_from_ints(fixtures::band()), FieldSpec::rationals());
  CHECK_THROWS_AS(minor(m, {0}, {0}), Error);
  CHECK_THROWS_AS(contract_subspace(m, {{Rational(1)}}), Error);
}

TEST_CASE("clones, lifts and field checks") {
  const auto u23 = matroid_of(matrix_from_ints({{1, 0, 1}, {0, 1, 1}}), FieldSpec::rationals());
  CHECK(largest_circuit(u23) == 3);
  const auto c = clone_k(u23, 2);
  CHECK(c.size() == 6);
  CHECK(c.rank() == 2);
  CHECK(c.rank({0, 3}) == 1);  // copies are parallel
  const auto q = matroid_of(matrix_from_ints({{1, 1}, {1, -1}}), FieldSpec::rationals());
  CHECK_FALSE(matroid_equal(q, reduce_mod_p(q, 2)));
  CHECK(matroid_equal(q, reduce_mod_p(q, 3)));
  CHECK(find_lift_prime(q, 2, 16) == std::optional<std::uint64_t>(3));
  RatMatrix half(1, 1);
  half(0, 0) = Rational(1, 2);
  CHECK_THROWS_AS(matroid_of(half, FieldSpec::prime(3)), Error);
  CHECK(smallest_circuit(u23) == std::optional<ElementSet>(ElementSet{0, 1, 2}));
  CHECK_FALSE(smallest_circuit(matroid_of(RatMatrix::identity(2), FieldSpec::rationals())));
}
