#pragma once

// Circuits and Graver bases of integer kernels.
//
// Vectors are stored one per antipodal pair, first nonzero entry positive.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/matrix.hpp"
#include "forge/rational.hpp"

namespace forge {

struct CircuitSet {
  std::vector<IntVector> vectors;
  /// Max l1 / l-infinity norm and lcm of the absolute nonzero entries; absent
  /// when there are no circuits.
  std::optional<Integer> c1;
  std::optional<Integer> c_inf;
  std::optional<Integer> kappa_dot;

  nlohmann::json to_json() const;
};

/// One coprime kernel vector per circuit of the column matroid.
CircuitSet matrix_circuits(const RatMatrix& a);

struct GraverOptions {
  /// Verification box is max(g_inf, box_bound).
  std::optional<long> box_bound;
  /// Skip verification (certified = false) when the box holds more points.
  double max_box_points = 2e7;
  /// Error(kBudgetExceeded) when the completion grows past this many vectors.
  std::size_t max_vectors = 20000;
};

struct GraverSet {
  std::vector<IntVector> vectors;
  std::optional<Integer> g1;
  std::optional<Integer> g_inf;
  /// Set when the box enumeration ran and matched the completion.
  bool certified = false;
  long box = 0;

  nlohmann::json to_json() const;
};

/// Graver basis by completion from a kernel lattice basis, cross-checked
/// against box enumeration.  Throws Error(kVerificationFailed) when the two
/// disagree.
GraverSet graver_basis(const RatMatrix& a, const GraverOptions& opt = {});

/// The conformally minimal nonzero kernel points with |x_i| <= box, found by
/// enumeration alone.  Throws Error(kBoxTooSmall) when one of them touches
/// the boundary of the box.
std::vector<IntVector> graver_by_box(const RatMatrix& a, long box);

/// Basis of the integer lattice ker A intersected with Z^n.
std::vector<IntVector> kernel_lattice_basis(const RatMatrix& a);

/// x is conformally below y: same orthant and |x_i| <= |y_i| everywhere.
/// Throws Error(kDimensionMismatch) on differing lengths.
bool conformal_leq(const IntVector& x, const IntVector& y);

Integer norm1(const IntVector& v);
Integer norm_inf(const IntVector& v);

}  // namespace forge
