#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "forge/cli.hpp"
#include "forge/error.hpp"
#include "forge/graph.hpp"
#include "forge/io.hpp"
#include "forge/linalg.hpp"
#include "forge/matroid.hpp"
#include "helpers.hpp"

using namespace forge;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kData = FORGE_TEST_DATA;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "graver_forge");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("forge_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("rmx round trip") {
  std::mt19937_64 rng(71);
  for (int it = 0; it < 50; ++it) {
    RatMatrix a = matrix_from_ints(fixtures::random_ints(rng, 4, 5, 9));
    a(0, 0) = Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 5));
    a(0, 0).canonicalize();
    CHECK(parse_rmx(format_rmx(a)) == a);
  }
  CHECK(parse_rmx("2 2\n1 -1/2\n0 3\n")(0, 1) == Rational(-1, 2));
  for (const char* bad : {"", "2 2\n1 2 3", "1 1\nx", "1 1\n1/0", "-1 2\n"})
    CHECK_THROWS_AS(parse_rmx(bad), Error);
  CHECK(load_rmx(kData + "/left.rmx") == matrix_from_ints(fixtures::left_example()));
}

TEST_CASE("graph and matroid text formats") {
  std::ifstream in(kData + "/path4.gr");
  const Graph g = read_gr(in);
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 3);
  CHECK(tree_depth(g).value == 3u);
  std::ostringstream out;
  write_gr(out, g);
  std::istringstream back(out.str());
  CHECK(read_gr(back).edges() == g.edges());
  std::istringstream bad("3 2\n0 1\n");
  CHECK_THROWS_AS(read_gr(bad), Error);

  const auto m = matroid_of(matrix_from_ints(fixtures::band()), FieldSpec::prime(3));
  std::ostringstream mo;
  write_matroid(mo, m);
  std::istringstream mi(mo.str());
  const auto m2 = read_matroid(mi);
  CHECK(m2.field().to_string() == m.field().to_string());
  CHECK(matroid_equal(m, m2));
  std::istringstream plain("1 2\n1 1\n");
  CHECK(read_matroid(plain).field().is_rational());
}

TEST_CASE("analyze reports the worked example") {
  const auto r = run({"--json", "analyze", kData + "/left.rmx"});
  REQUIRE(r.code == kExitOk);
  const auto j = json::parse(r.out);
  CHECK(j["schema"] == "graver-forge/1");
  CHECK(j["tree_depth"]["dual"] == 5);
  CHECK(j["tree_depth"]["primal"] == 7);
  CHECK(j["depth"]["csd"]["value"] == 2);
  CHECK(j["depth"]["csd"]["exactness"] == "exact");
  CHECK(j["circuits"]["count"] == 4);
  CHECK(j["graver"]["certified"] == true);
  CHECK(j["complete"] == true);
  // Same input, same bytes.
  CHECK(run({"--json", "analyze", kData + "/left.rmx"}).out == r.out);
  const auto text = run({"analyze", kData + "/incidence_t5.rmx"});
  CHECK(text.code == kExitOk);
  CHECK(text.out.find("td_I 4") != std::string::npos);
}

TEST_CASE("sparsify writes an equivalent matrix") {
  const auto dir = scratch_dir("sparsify");
  const auto out = (dir / "left_dual.rmx").string();
  const auto r = run({"--json", "sparsify", kData + "/left.rmx", "--target", "dual", "-d", "2", "-o", out});
  REQUIRE(r.code == kExitOk);
  const auto j = json::parse(r.out);
  CHECK(j["outcome"]["verdict"] == "transformed");
  const RatMatrix b = load_rmx(out);
  const RatMatrix a = load_rmx(kData + "/left.rmx");
  CHECK(row_space_equal(a, b));
  CHECK(dual_tree_depth(b) == 2);
  CHECK(parse_rmx(j["outcome"]["matrix"].get<std::string>()) == b);

  const auto inc = run({"--json", "sparsify", kData + "/incidence_t5.rmx", "--target", "incidence", "-d", "4"});
  CHECK(inc.code == kExitOk);
  CHECK(incidence_tree_depth(parse_rmx(json::parse(inc.out)["outcome"]["matrix"].get<std::string>())) == 3);

  const auto no = run({"sparsify", kData + "/band.rmx", "--target", "primal", "-d", "1"});
  CHECK(no.code == kExitNotEquivalent);
  const auto yes = run({"--kappa", "4", "sparsify", kData + "/band.rmx", "--target", "primal", "-d", "2", "-e", "2"});
  CHECK(yes.code == kExitOk);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"analyze", kData + "/missing.rmx"}).code == kExitUsage);
  CHECK(run({"--field", "gf:4", "analyze", kData + "/band.rmx"}).code == kExitUsage);
  CHECK(run({"validate", "--suite", "nope"}).code == kExitUsage);
  CHECK(run({"sparsify", kData + "/band.rmx", "--target", "sideways", "-d", "1"}).code == kExitUsage);
  CHECK(run({"--budget-depth", "1", "analyze", kData + "/left.rmx"}).code == kExitBudget);
  const auto err = run({"--json", "analyze", kData + "/missing.rmx"});
  CHECK(json::parse(err.out)["error"]["code"].is_string());
  CHECK(run({"--seed", "3", "validate", "--suite", "a-contract"}).code == kExitOk);
}

TEST_CASE("generate writes instances and manifests") {
  const auto dir = scratch_dir("generate");
  REQUIRE(run({"generate", "gn", "-n", "2", "--out-dir", dir.string()}).code == kExitOk);
  const auto manifest = json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["edges"] == 12);
  CHECK(manifest["expected"]["min_path"].get<std::size_t>() >= 2);
  CHECK(manifest["expected"]["max_path"].get<std::size_t>() <= 4);
  std::ifstream mf(dir / "gn_2.matroid");
  CHECK(read_matroid(mf).size() == 12);

  const auto hd = scratch_dir("hardness");
  REQUIRE(run({"generate", "hardness", "--graph", kData + "/k22_matching.gr", "--x", "0,1", "--y", "2,3",
               "-k", "1", "--variant", "cstar", "--out-dir", hd.string()})
              .code == kExitOk);
  const auto hm = json::parse(slurp(hd / "manifest.json"));
  CHECK(hm["expected"]["balanced_independent_set"] == true);
  CHECK(hm["threshold"] == 3);
  CHECK(fs::exists(hd / "hardness_cstar_k1.matroid"));
  CHECK(run({"generate", "hardness", "--graph", kData + "/k22_matching.gr", "--x", "0,2", "--y", "1,3",
             "-k", "1", "--out-dir", hd.string()})
            .code == kExitUsage);
}
