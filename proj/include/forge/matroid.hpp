#pragma once

// Linear matroids over Q or GF(p).  Elements are column indices of a fixed
// representation; minors keep the original indices and tombstone removed
// elements, so an element id means the same thing in every minor.

#include <cstddef>
#include <optional>
#include <vector>

#include "forge/field.hpp"
#include "forge/matrix.hpp"

namespace forge {

using ElementSet = std::vector<std::size_t>;  // sorted element ids

class LinearMatroid {
 public:
  LinearMatroid() : field_(FieldSpec::rationals()) {}
  /// Columns of `rep` are the elements.  Over GF(p) the entries are stored
  /// as residues in [0, p).
  LinearMatroid(FieldSpec field, RatMatrix rep);

  const FieldSpec& field() const noexcept { return field_; }
  /// Number of element ids, live or not.
  std::size_t ground_size() const noexcept { return rep_.cols(); }
  std::size_t ambient_dim() const noexcept { return rep_.rows(); }
  const RatMatrix& representation() const noexcept { return rep_; }

  bool is_live(std::size_t e) const { return e < live_.size() && live_[e]; }
  ElementSet elements() const;
  std::size_t size() const;

  /// Rank of a set of live elements; throws Error(kUnknownElement) otherwise.
  std::size_t rank(const ElementSet& s) const;
  std::size_t rank() const { return rank(elements()); }
  bool is_loop(std::size_t e) const { return rank({e}) == 0; }

  std::vector<Rational> vector_of(std::size_t e) const { return rep_.column(e); }

  /// Live elements restricted to `keep`; everything else is tombstoned.
  LinearMatroid restrict_to(const ElementSet& keep) const;
  LinearMatroid delete_elements(const ElementSet& del) const;

 private:
  friend LinearMatroid contract_subspace(const LinearMatroid&,
                                         const std::vector<std::vector<Rational>>&);
  friend LinearMatroid dualize(const LinearMatroid&);

  void check_live(const ElementSet& s) const;

  FieldSpec field_;
  RatMatrix rep_;
  std::vector<bool> live_;
};

/// M(A) over the given field.  Throws Error(kNotIntegral) for GF(p) when A
/// has fractional entries.
LinearMatroid matroid_of(const RatMatrix& a, FieldSpec field);

/// All circuits, by increasing size then lexicographically.
std::vector<ElementSet> matroid_circuits(const LinearMatroid& m);
/// A circuit of minimum size (lexicographically first), if any.
std::optional<ElementSet> smallest_circuit(const LinearMatroid& m);
/// Size of the largest circuit, 0 when there is none.
std::size_t largest_circuit(const LinearMatroid& m);

/// Components of the live elements ordered by smallest element.  Loops are
/// singleton components.
std::vector<ElementSet> components(const LinearMatroid& m);

/// Representation of the dual of the live part.
LinearMatroid dualize(const LinearMatroid& m);

/// M \ del / con.  Throws Error(kOverlap) when the sets meet.
LinearMatroid minor(const LinearMatroid& m, const ElementSet& del, const ElementSet& con);

/// Image of every element in the quotient by the span of `generators`.  The
/// quotient keeps the coordinates that are not pivots of the generators'
/// echelon form, so the result is deterministic.  Throws
/// Error(kDimensionMismatch) for generators of the wrong length.
LinearMatroid contract_subspace(const LinearMatroid& m,
                                const std::vector<std::vector<Rational>>& generators);

/// kM: copy j of element e gets id j * ground_size + e.
LinearMatroid clone_k(const LinearMatroid& m, std::size_t k);

/// Whether both matroids have the same live elements and the same
/// independent sets.  Throws Error(kTooLarge) above `max_elements` live
/// elements.
bool matroid_equal(const LinearMatroid& a, const LinearMatroid& b, std::size_t max_elements = 16);

/// Calls fn(RationalField{}) or fn(PrimeField{p}) according to `spec`.
template <class Fn>
decltype(auto) visit_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_rational()) return fn(RationalField{});
  return fn(PrimeField{spec.characteristic()});
}

/// Columns `cols` of a matroid's representation as field values.
template <class F>
FieldMatrix<F> field_columns(const F& f, const RatMatrix& rep, const ElementSet& cols) {
  FieldMatrix<F> out(rep.rows(), cols.size());
  for (std::size_t i = 0; i < rep.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = f.from_rational(rep(i, cols[j]));
  return out;
}

}  // namespace forge
