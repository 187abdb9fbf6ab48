#pragma once

// Equivalent matrices with small primal, dual or incidence tree-depth, built
// from decomposition trees of the column matroid, and the decision pipelines
// around them.

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "forge/decomposition_tree.hpp"
#include "forge/depth.hpp"
#include "forge/matrix.hpp"

namespace forge {

struct Kappa0 {
  std::size_t d = 0;
  std::size_t e = 0;
  Integer k0_bound;
  Integer kappa0;  // lcm(1, ..., k0_bound)
};

/// k0 = (2^e)^(d!) * (d!)^(d!/2) and its lcm.  Throws Error(kBudgetExceeded)
/// when k0 exceeds `limit`.
Kappa0 kappa0_of(std::size_t d, std::size_t e, const Integer& limit = 1'000'000);

/// Row-reduces the nonzero vertex labels of a deletion tree (in preorder) to
/// unit vectors.  Throws Error(kInvalidTree) unless the tree is valid for M(A).
RatMatrix primal_sparsify(const RatMatrix& a, const DecompositionTree& t);

/// Row-reduces the edge labels of a principal contraction* tree of M(A) to
/// unit vectors.  Throws Error(kNoCircuits) when ker A = {0}.
RatMatrix dual_sparsify_circuit(const RatMatrix& a);

/// Row-reduces the generators of a contraction* tree (in preorder) to unit
/// vectors; zero rows stay at the bottom.  Throws Error(kInvalidTree) unless
/// the tree is valid for M(A) and its generators form a basis of the column
/// space.
RatMatrix dual_sparsify_from_tree(const RatMatrix& a, const DecompositionTree& t);

/// Equivalent matrix with incidence tree-depth at most depth(trace) + 1,
/// built from a contraction*-deletion tree.  Throws Error(kInvalidTrace)
/// unless the trace is valid for M(A).
RatMatrix incidence_sparsify(const RatMatrix& a, const DecompositionTree& trace);

enum class Verdict { kTransformed, kNotEquivalent };

struct PreconditionOutcome {
  Verdict verdict = Verdict::kNotEquivalent;
  RatMatrix matrix;
  std::optional<DecompositionTree> certificate;
  std::string reason;
  std::optional<std::size_t> td;
  std::optional<std::size_t> ec;
  std::optional<Integer> c1;
  Exactness exactness = Exactness::kExact;

  nlohmann::json to_json() const;
};

/// Decides equivalence to a matrix with primal tree-depth <= d and entry
/// complexity <= e.  A must have full row rank (Error(kBadParams)
/// otherwise).  The modulus defaults to kappa0_of(d, e).
PreconditionOutcome alg_tdP(const RatMatrix& a, std::size_t d, std::size_t e,
                            std::optional<Integer> kappa_override = std::nullopt);

/// Equivalent matrix of optimal dual tree-depth, or NotEquivalent when that
/// optimum exceeds d or c1(A) exceeds k (k defaults to c1(A)).  Throws
/// Error(kBudgetOpen) when only an upper bound above d is known.
PreconditionOutcome alg_tdD(const RatMatrix& a, std::size_t d, std::size_t e,
                            std::optional<Integer> k_override = std::nullopt,
                            const DepthOptions& opt = {});

/// 2 * ceil(log2(k + 1)).
std::size_t circuit_ec_bound(const Integer& k);

}  // namespace forge
