#pragma once

// Matroid depth parameters: deletion-depth, contraction-depth,
// contraction-deletion-depth, contraction*-depth and
// contraction*-deletion-depth, each with a witness decomposition tree.
//
// All searches share one engine: minors are kept in canonical reduced
// echelon form and memoized on that form, so isomorphic minors reached along
// different branches are solved once.  Values are found by iterative
// deepening on a decision version of the recursion.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "forge/decomposition_tree.hpp"
#include "forge/matroid.hpp"

namespace forge {

enum class DepthParam {
  kDeletion,
  kContraction,
  kContractionDeletion,
  kCStar,
  kCStarDeletion,
  kPrincipalCStar,  // minimum depth of a principal contraction* tree
};

enum class Exactness { kExact, kUpperBound };

std::string depth_param_name(DepthParam p);
std::string exactness_name(Exactness e);

/// How contraction* searches branch.
///
/// kSplits: the edges above the first branching of a tree contract some
/// subspace A after which M/A splits into parts Y1, Y2, and contracting only
/// span(Y1) & span(Y2) is never worse.  So a connected minor branches over
/// those intersections, one per bipartition of its parallel classes, plus
/// contracting everything.  Exact over any field while there are at most
/// `max_split_classes` classes; beyond that it falls back to kDirections.
///
/// kDirections: one line at a time, every line over GF(p) and bounded
/// integer generators over Q (then only an upper bound unless lifted).
enum class CStarMoves { kSplits, kDirections };

struct DepthOptions {
  /// Report exceeds_budget as soon as the value is known to be larger.
  std::optional<std::size_t> budget;
  /// Cap on memoized minors; Error(kBudgetExceeded) beyond it.
  std::size_t max_states = 2'000'000;
  CStarMoves cstar_moves = CStarMoves::kSplits;
  std::size_t max_split_classes = 16;
  /// Over Q, candidate subspace generators are integer vectors (in echelon
  /// coordinates) with entries in [-gen_bound, gen_bound].
  long gen_bound = 2;
  /// Over Q with kDirections, compute contraction* values through a GF(p)
  /// representation of the same matroid when one is found.
  bool lift = true;
  /// Smallest prime tried for the lift.
  std::uint64_t min_lift_prime = 5;
  /// Use exactly this prime for the lift instead of searching.
  std::optional<std::uint64_t> lift_prime;
  /// Matroid comparison for the lift is attempted up to this many elements.
  std::size_t lift_check_limit = 16;
};

struct DepthReport {
  DepthParam param = DepthParam::kDeletion;
  std::size_t value = 0;
  /// Set when a budget was given and the value exceeds it; `value` is then a
  /// lower bound above the budget and the witness is empty.
  bool exceeds_budget = false;
  Exactness exactness = Exactness::kExact;
  DecompositionTree witness;
  /// Value computed over GF(lift_prime) when the lift was used.
  std::optional<std::size_t> lifted_value;
  std::optional<std::uint64_t> lift_prime;
  std::string note;

  nlohmann::json to_json() const;
};

/// Throw Error(kEmptyMatroid) when M has no live elements.
DepthReport deletion_depth(const LinearMatroid& m, const DepthOptions& opt = {});
DepthReport contraction_depth(const LinearMatroid& m, const DepthOptions& opt = {});
DepthReport cdd_depth(const LinearMatroid& m, const DepthOptions& opt = {});
DepthReport cstar_depth(const LinearMatroid& m, const DepthOptions& opt = {});
DepthReport csdd_depth(const LinearMatroid& m, const DepthOptions& opt = {});
/// Exhaustive minimum over principal contraction* trees.
DepthReport principal_cstar_depth(const LinearMatroid& m, const DepthOptions& opt = {});

DepthReport depth_of(DepthParam p, const LinearMatroid& m, const DepthOptions& opt = {});

struct PrincipalTree {
  DecompositionTree tree{TreeKind::kCStarPrincipal};
  std::size_t largest_circuit = 0;  // k
  bool used_fallback = false;       // greedy exceeded k^2, exhaustive search used
  std::string note;
};

/// Principal contraction* tree of depth at most k^2, k the largest circuit
/// size: contracts the elements of a smallest circuit one at a time and
/// splits at every disconnection.  A matroid without circuits gets one edge
/// per element below the root.
PrincipalTree principal_cstar_tree(const LinearMatroid& m);

/// Checks a deletion, contraction or contraction-deletion tree against M.
/// Throws Error(kLabelMismatch) unless the labels cover the live elements
/// exactly once.
bool verify_deletion_tree(const LinearMatroid& m, const DecompositionTree& t);

/// Checks a contraction* tree (principal, general or with deletions) by
/// replaying the quotients.  Throws Error(kLabelMismatch) as above.
bool verify_cstar_tree(const LinearMatroid& m, const DecompositionTree& t);

/// Dispatches on the tree kind.
bool verify_tree(const LinearMatroid& m, const DecompositionTree& t);

/// Rank of a list of vectors over the field.
std::size_t vectors_rank(const FieldSpec& field, const std::vector<std::vector<Rational>>& vs,
                         std::size_t dim);

/// Smallest prime p >= start for which M(columns scaled to integers) over
/// GF(p) equals M over Q; gives up after `attempts` primes.
std::optional<std::uint64_t> find_lift_prime(const LinearMatroid& m, std::uint64_t start,
                                             std::size_t limit, std::size_t attempts = 64);

/// GF(p) matroid on the same element ids as a Q-matroid, columns scaled to
/// coprime integers first.
LinearMatroid reduce_mod_p(const LinearMatroid& m, std::uint64_t p);

}  // namespace forge
