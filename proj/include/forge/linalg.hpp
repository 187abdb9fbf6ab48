#pragma once

// Exact rational linear algebra: echelon forms, kernels, entry complexity and
// row-equivalence.  Everything here is a pure function of its inputs.

#include <cstdint>
#include <span>
#include <vector>

#include "forge/matrix.hpp"

namespace forge {

struct EchelonForm {
  RatMatrix matrix;                 // reduced row echelon form, same shape as input
  std::vector<std::size_t> pivots;  // pivot column of row i
};

EchelonForm rref(const RatMatrix& a);
std::size_t rank(const RatMatrix& a);

/// Basis of ker A.  Each vector is integral with coprime entries and a
/// positive first nonzero entry; one vector per non-pivot column, ordered by
/// that column.
std::vector<IntVector> kernel_basis(const RatMatrix& a);

/// Row operations turning the columns `basis_cols` into the leading unit
/// vectors e_0, e_1, ... in the given order.  Throws Error(kDependentBasis)
/// when the columns are dependent.
RatMatrix reduce_basis_to_identity(const RatMatrix& a, std::span<const std::size_t> basis_cols);

/// Max over entries p/q of ceil(log2(|p|+1)) + ceil(log2(|q|+1)).  A zero
/// entry costs 1; the empty matrix has complexity 0.
std::size_t entry_complexity(const RatMatrix& a);

/// Whether the two matrices have the same row space.  Throws
/// Error(kShapeMismatch) on differing column counts.
bool row_space_equal(const RatMatrix& a, const RatMatrix& b);

/// Nonzero rows of the reduced row echelon form.
RatMatrix row_space_basis(const RatMatrix& a);

/// Applies `steps` random elementary row operations (row additions with small
/// nonzero multipliers, scalings, swaps).  Deterministic for a fixed seed.
RatMatrix random_row_ops(const RatMatrix& a, std::uint64_t seed, std::size_t steps);

/// Inverse of a square matrix; throws Error(kDependentBasis) when singular.
RatMatrix inverse(const RatMatrix& a);

bool in_kernel(const RatMatrix& a, const IntVector& v);

}  // namespace forge
