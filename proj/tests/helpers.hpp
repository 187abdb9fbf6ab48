#pragma once

// Small shared fixtures for the unit tests.

#include <random>
#include <vector>

#include "forge/matrix.hpp"

namespace fixtures {

inline std::vector<std::vector<long>> left_example() {
  return {{2, 2, 1, 2, 1, 3, 1},
          {2, 1, 1, 1, 2, 1, 1},
          {2, 2, 2, 2, 2, 2, 1},
          {2, 1, 1, 2, 2, 1, 1},
          {2, 2, 1, 2, 1, 3, 2}};
}

/// The t = 5 incidence example: first row (1, -1, ..., -1), then e_1 - e_j.
inline std::vector<std::vector<long>> incidence_t5() {
  return {{1, -1, -1, -1, -1}, {0, 1, -1, 0, 0}, {0, 1, 0, -1, 0}, {0, 1, 0, 0, -1}};
}

inline std::vector<std::vector<long>> band() { return {{1, 2, 0}, {0, 1, 2}}; }

inline std::vector<std::vector<long>> random_ints(std::mt19937_64& rng, std::size_t max_rows,
                                                  std::size_t max_cols, long bound) {
  const std::size_t rows = 1 + rng() % max_rows, cols = 1 + rng() % max_cols;
  std::vector<std::vector<long>> a(rows, std::vector<long>(cols));
  for (auto& r : a)
    for (auto& x : r) x = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
  return a;
}

}  // namespace fixtures
