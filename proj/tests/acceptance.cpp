// One PASS/FAIL line per acceptance criterion.  Exact values are compared
// with zero tolerance; the only tolerances are the wall-clock limits below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "forge/cli.hpp"
#include "forge/graph.hpp"
#include "forge/graver.hpp"
#include "forge/io.hpp"
#include "forge/linalg.hpp"
#include "forge/validate.hpp"

using namespace forge;

namespace {

const std::string kData = FORGE_TEST_DATA;

struct Check {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    note += (note.empty() ? "" : "; ") + what;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs < limit_s, "over time limit");
  if (!c.ok) ++failures;
  std::printf("%s %d %s (%.2f s, limit %.0f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
              limit_s, c.note.empty() ? "" : ": ", c.note.c_str());
  std::fflush(stdout);
}

void suite_checks(Check& c, const SuiteReport& r, std::size_t expected_cases) {
  if (expected_cases) c.require(r.cases == expected_cases, "cases " + std::to_string(r.cases));
  c.require(r.cases > 0, "empty suite");
  c.require(r.passed(), std::to_string(r.violations.size()) + " violations" +
                            (r.violations.empty() ? "" : ", first: " + r.violations.front()));
}

}  // namespace

int main() {
  ValidationConfig cfg;
  cfg.seed = 1;

  criterion(1, "left worked example: td_D 5, sparsify dual d=2 gives td_D 2", 30, [](Check& c) {
    const RatMatrix a = load_rmx(kData + "/left.rmx");
    c.require(dual_tree_depth(a) == 5, "td_D(A) != 5");
    std::ostringstream out, err;
    const int code = run_cli({"graver_forge", "--json", "sparsify", kData + "/left.rmx", "--target", "dual", "-d", "2"},
                             out, err);
    c.require(code == kExitOk, "exit " + std::to_string(code));
    const auto j = nlohmann::json::parse(out.str());
    const RatMatrix b = parse_rmx(j["outcome"]["matrix"].get<std::string>());
    c.require(dual_tree_depth(b) == 2, "td_D(A') != 2");
    c.require(row_space_equal(a, b), "row spaces differ");
  });

  criterion(2, "incidence worked example: td_I 4, Graver {(4,1,1,1,1)}, g1 8", 10, [](Check& c) {
    const RatMatrix a = load_rmx(kData + "/incidence_t5.rmx");
    c.require(incidence_tree_depth(a) == 4, "td_I != 4");
    const auto g = graver_basis(a);
    c.require(g.vectors.size() == 1 && g.vectors[0] == IntVector{4, 1, 1, 1, 1}, "Graver basis differs");
    c.require(g.g1 && *g.g1 == 8, "g1 != 8");
    c.require(g.certified, "Graver basis not box-certified");
  });

  criterion(3, "primal tree-depth equals deletion-depth (200 matrices x 10 equivalents)", 300,
            [&](Check& c) { suite_checks(c, run_suite("tdP", cfg), 200); });

  SuiteReport equiv;
  criterion(4, "circuit dual sparsification bounds and kernel preservation", 300, [&](Check& c) {
    equiv = run_suite("equiv", cfg);
    suite_checks(c, equiv, 0);
  });

  criterion(5, "log2 k <= csd <= k^2 and principal trees verify (100 matroids)", 300,
            [&](Check& c) { suite_checks(c, run_suite("circuit-bound", cfg), 100); });

  criterion(6, "graph reduction three-way equivalence over GF(3) (16 graphs x k in 0..2)", 600,
            [&](Check& c) { suite_checks(c, run_suite("graph-reduction", cfg), 48); });

  criterion(7, "subspace contraction component inequality (500 pairs)", 300,
            [&](Check& c) { suite_checks(c, run_suite("a-contract", cfg), 500); });

  criterion(8, "G_n paths in [n,2n], circuits <= 4n, cd >= C(n,2) for n <= 2, n <= 3", 600, [&](Check& c) {
    ValidationConfig g = cfg;
    g.max_gn = 3;
    const auto r = run_suite("gn", g);
    suite_checks(c, r, 3);
    c.require(r.details.contains("3"), "n = 3 missing");
  });

  criterion(9, "Graver completion matches box enumeration; circuits in Graver; row-op invariance", 300,
            [&](Check& c) {
              if (equiv.cases == 0) equiv = run_suite("equiv", cfg);
              suite_checks(c, equiv, 0);
              const auto& d = equiv.details;
              c.require(d.value("box_certified", 0) > 0, "no box-certified instance");
              c.require(d.contains("g1_vs_c1") && !d["g1_vs_c1"].empty(), "no g1 vs c1 table");
            });

  std::cout << "g1 vs c1 over the equivalence corpus (c1: cases, g1 range)\n";
  for (const auto& row : equiv.details.value("g1_vs_c1", nlohmann::json::array()))
    std::cout << "  " << row["c1"].get<std::string>() << ": " << row["cases"] << ", ["
              << row["g1_min"].get<std::string>() << ", " << row["g1_max"].get<std::string>() << "]\n";
  std::cout << "box-certified " << equiv.details.value("box_certified", 0) << " of "
            << equiv.details.value("graver_checked", 0) << " Graver computations\n";
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << 9 - failures << "/9\n";
  return failures ? 1 : 0;
}
