#include "forge/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "forge/depth.hpp"
#include "forge/error.hpp"
#include "forge/graph.hpp"
#include "forge/graver.hpp"
#include "forge/instances.hpp"
#include "forge/io.hpp"
#include "forge/linalg.hpp"
#include "forge/precondition.hpp"
#include "forge/validate.hpp"

namespace forge {
namespace {

using nlohmann::json;

constexpr const char* kSchema = "graver-forge/1";

struct RunConfig {
  std::string field = "q";
  std::optional<std::size_t> budget_depth;
  std::optional<long> graver_box;
  std::optional<std::string> kappa;
  std::optional<std::string> circuit_bound;
  long gen_bound = 2;
  std::uint64_t seed = 1;
  std::string cstar_search = "splits";
  bool json = false;

  DepthOptions depth_options() const {
    DepthOptions opt;
    opt.budget = budget_depth;
    opt.gen_bound = gen_bound;
    opt.cstar_moves = cstar_search == "directions" ? CStarMoves::kDirections : CStarMoves::kSplits;
    return opt;
  }
};

Integer parse_integer(const std::string& text, const char* what) {
  Integer v;
  if (v.set_str(text, 10) != 0 || v <= 0)
    throw Error(ErrorCode::kBadParams, std::string(what) + " must be a positive integer");
  return v;
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParseError, "bad vertex list '" + text + "'");
    }
  }
  return out;
}

json envelope(const std::string& command) { return json{{"schema", kSchema}, {"command", command}}; }

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
  std::string path;
};

int cmd_analyze(const AnalyzeArgs& args, const RunConfig& cfg, std::ostream& out) {
  const RatMatrix a = load_rmx(args.path);
  const FieldSpec field = FieldSpec::parse(cfg.field);
  json j = envelope("analyze");
  j["field"] = field.to_string();
  j["matrix"] = {{"rows", a.rows()}, {"cols", a.cols()}, {"rank", rank(a)}, {"ec", entry_complexity(a)}};
  j["tree_depth"] = {{"primal", primal_tree_depth(a)},
                     {"dual", dual_tree_depth(a)},
                     {"incidence", incidence_tree_depth(a)}};
  bool budget_hit = false;
  json depths = json::object();
  if (a.cols() > 0) {
    const auto m = matroid_of(a, field);
    for (auto p : {DepthParam::kDeletion, DepthParam::kContraction, DepthParam::kContractionDeletion,
                   DepthParam::kCStar, DepthParam::kCStarDeletion}) {
      const auto rep = depth_of(p, m, cfg.depth_options());
      budget_hit = budget_hit || rep.exceeds_budget;
      json d{{"value", rep.value},
             {"exactness", exactness_name(rep.exactness)},
             {"exceeds_budget", rep.exceeds_budget}};
      if (!rep.note.empty()) d["note"] = rep.note;
      depths[depth_param_name(p)] = d;
    }
  }
  j["depth"] = depths;
  j["circuits"] = matrix_circuits(a).to_json();
  GraverOptions gopt;
  gopt.box_bound = cfg.graver_box;
  try {
    j["graver"] = graver_basis(a, gopt).to_json();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBudgetExceeded && e.code() != ErrorCode::kTooLarge) throw;
    budget_hit = true;
    j["graver"] = {{"error", e.what()}};
  }
  j["complete"] = !budget_hit;
  if (cfg.json) {
    out << j.dump(2) << "\n";
  } else {
    out << "matrix " << a.rows() << "x" << a.cols() << " rank " << j["matrix"]["rank"] << " ec "
        << j["matrix"]["ec"] << "\n";
    out << "td_P " << j["tree_depth"]["primal"] << " td_D " << j["tree_depth"]["dual"] << " td_I "
        << j["tree_depth"]["incidence"] << "\n";
    for (const char* name : {"dd", "cd", "cdd", "csd", "csdd"}) {
      if (!depths.contains(name)) continue;
      const auto& d = depths[name];
      if (d["exceeds_budget"].get<bool>()) {
        out << name << " >= " << d["value"] << " (over budget)\n";
      } else {
        out << name << " " << d["value"] << " (" << d["exactness"].get<std::string>() << ")\n";
      }
    }
    const auto& c = j["circuits"];
    out << "circuits " << c["count"] << " c1 " << c["c1"].dump() << " c_inf " << c["c_inf"].dump()
        << " kappa " << c["kappa_dot"].dump() << "\n";
    const auto& g = j["graver"];
    if (g.contains("error")) {
      out << "graver " << g["error"].get<std::string>() << "\n";
    } else {
      out << "graver " << g["count"] << " g1 " << g["g1"].dump() << " g_inf " << g["g_inf"].dump()
          << (g["certified"].get<bool>() ? " certified" : " uncertified") << "\n";
    }
  }
  return budget_hit ? kExitBudget : kExitOk;
}

// ---------------------------------------------------------------------------
// sparsify

struct SparsifyArgs {
  std::string path;
  std::string target = "dual";
  std::size_t d = 0;
  std::size_t e = 2;
  std::string out_path;
};

PreconditionOutcome incidence_outcome(const RatMatrix& a, std::size_t d, const RunConfig& cfg) {
  PreconditionOutcome o;
  const auto m = matroid_of(a, FieldSpec::rationals());
  DepthOptions opt = cfg.depth_options();
  opt.budget.reset();
  const auto rep = csdd_depth(m, opt);
  o.exactness = rep.exactness;
  // td_I of the best equivalent matrix is csdd + 1.
  if (rep.value + 1 > d) {
    if (rep.exactness != Exactness::kExact)
      throw Error(ErrorCode::kBudgetOpen, "only an upper bound " + std::to_string(rep.value) +
                                              " on contraction*-deletion-depth is known");
    o.reason = "optimal incidence tree-depth is " + std::to_string(rep.value + 1);
    o.td = rep.value + 1;
    return o;
  }
  o.matrix = incidence_sparsify(a, rep.witness);
  o.certificate = rep.witness;
  o.td = incidence_tree_depth(o.matrix);
  o.ec = entry_complexity(o.matrix);
  o.verdict = Verdict::kTransformed;
  return o;
}

int cmd_sparsify(const SparsifyArgs& args, const RunConfig& cfg, std::ostream& out) {
  const RatMatrix a = load_rmx(args.path);
  PreconditionOutcome o;
  if (args.target == "primal") {
    std::optional<Integer> kappa;
    if (cfg.kappa) kappa = parse_integer(*cfg.kappa, "--kappa");
    o = alg_tdP(a, args.d, args.e, kappa);
  } else if (args.target == "dual") {
    std::optional<Integer> k;
    if (cfg.circuit_bound) k = parse_integer(*cfg.circuit_bound, "--circuit-bound");
    DepthOptions opt = cfg.depth_options();
    opt.budget.reset();
    o = alg_tdD(a, args.d, args.e, k, opt);
  } else {
    o = incidence_outcome(a, args.d, cfg);
  }
  if (o.verdict == Verdict::kTransformed && !args.out_path.empty()) save_text(args.out_path, format_rmx(o.matrix));
  if (cfg.json) {
    json j = envelope("sparsify");
    j["target"] = args.target;
    j["d"] = args.d;
    j["e"] = args.e;
    j["outcome"] = o.to_json();
    out << j.dump(2) << "\n";
  } else if (o.verdict == Verdict::kTransformed) {
    out << "transformed";
    if (o.td) out << " td " << *o.td;
    if (o.ec) out << " ec " << *o.ec;
    out << "\n" << format_rmx(o.matrix);
  } else {
    out << "not-equivalent: " << o.reason << "\n";
  }
  return o.verdict == Verdict::kTransformed ? kExitOk : kExitNotEquivalent;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string family;
  std::size_t n = 1;
  std::string graph_path;
  std::string x, y;
  std::size_t k = 1;
  std::string variant = "cstar";
  std::string out_dir = ".";
};

HardnessVariant parse_variant(const std::string& v) {
  if (v == "cstar") return HardnessVariant::kCStar;
  if (v == "cd2M") return HardnessVariant::kCd2M;
  if (v == "cdd-clone") return HardnessVariant::kCddClone;
  if (v == "csdd-clone") return HardnessVariant::kCsddClone;
  if (v == "dd-dual") return HardnessVariant::kDdDual;
  throw Error(ErrorCode::kBadParams, "unknown hardness variant " + v);
}

std::string matroid_text(const LinearMatroid& m) {
  std::ostringstream s;
  write_matroid(s, m);
  return s.str();
}

int cmd_generate(const GenerateArgs& args, const RunConfig& cfg, std::ostream& out) {
  namespace fs = std::filesystem;
  fs::create_directories(args.out_dir);
  json manifest = envelope("generate");
  manifest["family"] = args.family;
  std::vector<std::string> written;
  if (args.family == "gn") {
    const auto g = gn_family(args.n);
    std::ostringstream gr;
    gr << g.num_vertices << " " << g.edges.size() << "\n";
    for (const auto& [u, v] : g.edges) gr << u << " " << v << "\n";
    const std::string stem = "gn_" + std::to_string(args.n);
    save_text((fs::path(args.out_dir) / (stem + ".gr")).string(), gr.str());
    save_text((fs::path(args.out_dir) / (stem + ".matroid")).string(), matroid_text(g.matroid()));
    written = {stem + ".gr", stem + ".matroid"};
    const auto paths = rb_path_lengths(g);
    const auto cycles = cycle_lengths(g);
    manifest["n"] = args.n;
    manifest["vertices"] = g.num_vertices;
    manifest["edges"] = g.edges.size();
    manifest["r"] = g.r;
    manifest["b"] = g.b;
    manifest["expected"] = {{"min_path", paths.front()},
                            {"max_path", paths.back()},
                            {"path_range", {args.n, 2 * args.n}},
                            {"max_circuit", cycles.back()},
                            {"max_circuit_bound", 4 * args.n},
                            {"cd_lower_bound", args.n * (args.n - 1) / 2}};
  } else if (args.family == "hardness") {
    if (args.graph_path.empty()) throw Error(ErrorCode::kBadParams, "hardness needs --graph");
    std::ifstream in(args.graph_path);
    if (!in) throw Error(ErrorCode::kParseError, "cannot open " + args.graph_path);
    const Graph g = read_gr(in);
    const Bipartition parts{parse_list(args.x), parse_list(args.y)};
    const FieldSpec field = FieldSpec::parse(cfg.field);
    const auto inst = hardness_instance(g, parts, args.k, field, parse_variant(args.variant));
    const std::string stem = "hardness_" + args.variant + "_k" + std::to_string(args.k);
    save_text((fs::path(args.out_dir) / (stem + ".matroid")).string(), matroid_text(inst.matroid));
    written = {stem + ".matroid"};
    manifest["variant"] = args.variant;
    manifest["k"] = args.k;
    manifest["field"] = field.to_string();
    manifest["elements"] = inst.matroid.size();
    manifest["param"] = depth_param_name(inst.param);
    manifest["threshold"] = inst.threshold;
    manifest["expected"] = {{"balanced_independent_set", balanced_independent_set(g, parts, args.k)}};
  } else {
    throw Error(ErrorCode::kBadParams, "unknown family " + args.family);
  }
  manifest["files"] = written;
  const std::string text = manifest.dump(2) + "\n";
  save_text((fs::path(args.out_dir) / "manifest.json").string(), text);
  if (cfg.json) {
    out << text;
  } else {
    for (const auto& f : written) out << (fs::path(args.out_dir) / f).string() << "\n";
    out << (fs::path(args.out_dir) / "manifest.json").string() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateArgs {
  std::vector<std::string> suites;
  std::size_t max_gn = 2;
};

int cmd_validate(const ValidateArgs& args, const RunConfig& cfg, std::ostream& out) {
  ValidationConfig vc;
  vc.seed = cfg.seed;
  vc.gen_bound = cfg.gen_bound;
  vc.max_gn = args.max_gn;
  if (cfg.field != "q") vc.field = FieldSpec::parse(cfg.field);
  std::vector<std::string> names = args.suites;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = suite_names();
  json reports = json::array();
  bool ok = true;
  for (const auto& s : names) {
    const auto rep = run_suite(s, vc);
    ok = ok && rep.passed();
    reports.push_back(rep.to_json());
    if (!cfg.json) {
      out << (rep.passed() ? "PASS " : "FAIL ") << s << " cases " << rep.cases << " violations "
          << rep.violations.size() << "\n";
      for (const auto& v : rep.violations) out << "  " << v << "\n";
    }
  }
  if (cfg.json) {
    json j = envelope("validate");
    j["seed"] = cfg.seed;
    j["suites"] = reports;
    j["passed"] = ok;
    out << j.dump(2) << "\n";
  }
  return ok ? kExitOk : kExitValidation;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kBudgetExceeded:
    case ErrorCode::kBudgetOpen:
      return kExitBudget;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Depth parameters, preconditioning and Graver bases of integer matrices", "graver_forge"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--field", cfg.field, "q or gf:P")->capture_default_str();
  app.add_option("--budget-depth", cfg.budget_depth, "stop depth searches above this value");
  app.add_option("--graver-box", cfg.graver_box, "lower bound on the Graver verification box");
  app.add_option("--kappa", cfg.kappa, "modulus for the primal pipeline (default kappa0(d, e))");
  app.add_option("--circuit-bound", cfg.circuit_bound, "k for the dual pipeline (default c1(A))");
  app.add_option("--gen-bound", cfg.gen_bound, "entry bound for Q generators in direction search")
      ->capture_default_str();
  app.add_option("--cstar-search", cfg.cstar_search, "splits or directions")
      ->check(CLI::IsMember({"splits", "directions"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for the validation corpora")->capture_default_str();
  app.add_flag("--json", cfg.json, "JSON output");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "tree-depths, depth parameters, circuits and Graver basis");
  analyze->add_option("matrix", an.path, ".rmx file")->required();

  SparsifyArgs sp;
  auto* sparsify = app.add_subcommand("sparsify", "equivalent matrix of small tree-depth");
  sparsify->add_option("matrix", sp.path, ".rmx file")->required();
  sparsify->add_option("--target", sp.target)
      ->check(CLI::IsMember({"primal", "dual", "incidence"}))
      ->capture_default_str();
  sparsify->add_option("-d", sp.d, "depth bound")->required();
  sparsify->add_option("-e", sp.e, "entry complexity bound")->capture_default_str();
  sparsify->add_option("-o,--out", sp.out_path, "write the new matrix here");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "instance families");
  generate->add_option("family", gen.family)->required()->check(CLI::IsMember({"gn", "hardness"}));
  generate->add_option("-n", gen.n, "G_n index")->capture_default_str();
  generate->add_option("--graph", gen.graph_path, ".gr file (hardness)");
  generate->add_option("--x", gen.x, "comma-separated vertices of X");
  generate->add_option("--y", gen.y, "comma-separated vertices of Y");
  generate->add_option("-k", gen.k)->capture_default_str();
  generate->add_option("--variant", gen.variant, "cstar, cd2M, cdd-clone, csdd-clone or dd-dual")
      ->capture_default_str();
  generate->add_option("--out-dir", gen.out_dir)->capture_default_str();

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "seeded property suites");
  validate->add_option("--suite", va.suites, "suite name (repeatable) or all");
  validate->add_option("--max-gn", va.max_gn, "largest n for the gn suite")->capture_default_str();

  for (auto* sub : {analyze, sparsify, generate, validate}) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (cfg.field != "q") FieldSpec::parse(cfg.field);
    if (*analyze) return cmd_analyze(an, cfg, out);
    if (*sparsify) return cmd_sparsify(sp, cfg, out);
    if (*generate) return cmd_generate(gen, cfg, out);
    return cmd_validate(va, cfg, out);
  } catch (const Error& e) {
    if (cfg.json) {
      json j = envelope("error");
      j["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
      out << j.dump(2) << "\n";
    }
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace forge
