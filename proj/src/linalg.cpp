#include "forge/linalg.hpp"

#include <random>

#include "forge/error.hpp"
#include "forge/field.hpp"

namespace forge {

std::vector<Rational> apply(const RatMatrix& a, const IntVector& v) {
  if (v.size() != a.cols()) throw Error(ErrorCode::kDimensionMismatch, "vector length");
  std::vector<Rational> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

RatMatrix vstack(const RatMatrix& top, const RatMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw Error(ErrorCode::kShapeMismatch, "vstack column count");
  RatMatrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
  return out;
}

RatMatrix matrix_from_ints(const std::vector<std::vector<long>>& rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m ? rows[0].size() : 0;
  RatMatrix out(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != n) throw Error(ErrorCode::kShapeMismatch, "ragged rows");
    for (std::size_t j = 0; j < n; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

EchelonForm rref(const RatMatrix& a) {
  EchelonForm e{a, {}};
  e.pivots = rref_in_place(RationalField{}, e.matrix);
  return e;
}

std::size_t rank(const RatMatrix& a) { return rref(a).pivots.size(); }

std::vector<IntVector> kernel_basis(const RatMatrix& a) {
  const auto e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<IntVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.matrix(r, free);
    basis.push_back(canonical_primitive(integral_primitive(v)));
  }
  return basis;
}

RatMatrix reduce_basis_to_identity(const RatMatrix& a, std::span<const std::size_t> basis_cols) {
  RatMatrix m = a;
  for (std::size_t k = 0; k < basis_cols.size(); ++k) {
    const std::size_t col = basis_cols[k];
    if (col >= m.cols()) throw Error(ErrorCode::kDimensionMismatch, "basis column out of range");
    std::size_t sel = k;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) {
      throw Error(ErrorCode::kDependentBasis, "column " + std::to_string(col) +
                                                  " depends on the earlier basis columns");
    }
    m.swap_rows(sel, k);
    const Rational inv = 1 / m(k, col);
    for (std::size_t c = 0; c < m.cols(); ++c) m(k, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == k || m(r, col) == 0) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) -= factor * m(k, c);
    }
  }
  return m;
}

std::size_t entry_complexity(const RatMatrix& a) {
  std::size_t best = 0;
  for (const auto& q : a.data()) {
    const std::size_t bits = bit_length(abs(q.get_num())) + bit_length(q.get_den());
    if (bits > best) best = bits;
  }
  return best;
}

RatMatrix row_space_basis(const RatMatrix& a) {
  const auto e = rref(a);
  std::vector<std::size_t> rows(e.pivots.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  std::vector<std::size_t> cols(a.cols());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  return e.matrix.select(rows, cols);
}

bool row_space_equal(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "column counts " + std::to_string(a.cols()) + " and " +
                                               std::to_string(b.cols()));
  }
  return row_space_basis(a) == row_space_basis(b);
}

RatMatrix random_row_ops(const RatMatrix& a, std::uint64_t seed, std::size_t steps) {
  RatMatrix m = a;
  if (m.rows() == 0) return m;
  std::mt19937_64 rng(seed);
  static const long kMultipliers[] = {-3, -2, -1, 1, 2, 3};
  static const Rational kScales[] = {Rational(-1), Rational(2), Rational(-2), Rational(1, 2),
                                     Rational(3), Rational(-1, 3)};
  for (std::size_t s = 0; s < steps; ++s) {
    const auto op = m.rows() > 1 ? rng() % 4 : 3;
    const std::size_t i = rng() % m.rows();
    if (op <= 1) {
      std::size_t j = rng() % (m.rows() - 1);
      if (j >= i) ++j;
      const long c = kMultipliers[rng() % 6];
      for (std::size_t col = 0; col < m.cols(); ++col) m(i, col) += c * m(j, col);
    } else if (op == 2) {
      std::size_t j = rng() % (m.rows() - 1);
      if (j >= i) ++j;
      m.swap_rows(i, j);
    } else {
      const Rational& c = kScales[rng() % 6];
      for (std::size_t col = 0; col < m.cols(); ++col) m(i, col) *= c;
    }
  }
  return m;
}

RatMatrix inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::kShapeMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> left(n);
  for (std::size_t i = 0; i < n; ++i) left[i] = i;
  const RatMatrix red = reduce_basis_to_identity(aug, left);
  std::vector<std::size_t> rows(n), right(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = i;
    right[i] = n + i;
  }
  return red.select(rows, right);
}

bool in_kernel(const RatMatrix& a, const IntVector& v) {
  for (const auto& x : apply(a, v))
    if (x != 0) return false;
  return true;
}

}  // namespace forge
