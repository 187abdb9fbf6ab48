#pragma once

// Seeded property suites over random corpora and the fixed worked examples.
// Each suite counts cases and records every violation it finds.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/field.hpp"
#include "forge/matrix.hpp"

namespace forge {

struct ValidationConfig {
  std::uint64_t seed = 1;
  FieldSpec field = FieldSpec::prime(3);  // for the graph-reduction suite
  long gen_bound = 2;
  std::size_t max_gn = 2;  // largest n for the G_n suite
};

struct SuiteReport {
  std::string suite;
  std::size_t cases = 0;
  std::vector<std::string> violations;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return violations.empty(); }
  nlohmann::json to_json() const;
};

/// Suite names: tdP, tdI, orig-eq, equiv, circuit-bound, graph-reduction,
/// a-contract, gn.  Throws Error(kBadParams) for anything else.
SuiteReport run_suite(const std::string& suite, const ValidationConfig& cfg);
std::vector<std::string> suite_names();

/// Integer matrix with 1..max_rows rows, 1..max_cols columns and entries
/// in [-bound, bound].
RatMatrix random_int_matrix(std::mt19937_64& rng, std::size_t max_rows, std::size_t max_cols,
                            long bound);

/// `count` matrices from random_int_matrix with the given seed.
std::vector<RatMatrix> random_corpus(std::uint64_t seed, std::size_t count, std::size_t max_rows,
                                     std::size_t max_cols, long bound);

}  // namespace forge
