// Command-line front end: constructions, sumset kernels, density reports
// and verification suites, emitting deterministic JSON/CSV.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 inconclusive.

#include <addcomp/constructions.hpp>
#include <addcomp/density.hpp>
#include <addcomp/greedy.hpp>
#include <addcomp/oracle.hpp>
#include <addcomp/report_io.hpp>
#include <addcomp/sets.hpp>
#include <addcomp/version.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace addcomp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  os << contents;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

std::string set_as_text(const GroundSet& g) {
  std::ostringstream os;
  write_set_text(os, g);
  return os.str();
}

std::string set_as_binary(const GroundSet& g) {
  std::ostringstream os(std::ios::binary);
  write_set_binary(os, g);
  return os.str();
}

GroundSet read_set_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open set file: " + path.string());
  char probe[8] = {};
  is.read(probe, 8);
  is.clear();
  is.seekg(0);
  if (std::string_view(probe, 8) == "horizon=") return read_set_text(is);
  return read_set_binary(is);
}

std::string report_payload(const DensityReport& rep, const std::string& format) {
  if (format == "csv") return density_report_csv(rep);
  Json j = to_json(rep);
  j["build_info"] = build_info_json();
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

struct GreedyArgs {
  std::string b_list;
  std::string alpha_text;
  std::uint64_t horizon = 0;
  std::string out_dir = ".";
  std::string format = "json";
};

int run_greedy(const GreedyArgs& args) {
  const FiniteSet b = FiniteSet::parse(args.b_list);
  const DensityTarget alpha = parse_density(args.alpha_text);
  if (args.horizon == 0) throw CLI::ValidationError("--N", "horizon must be positive");

  const GreedyResult result = build_greedy(b, alpha, args.horizon);
  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);

  write_file(dir / "greedy_set.txt", set_as_text(result.set));

  Json steps = Json::array();
  for (const auto& st : result.steps) {
    steps.push_back(Json{{"a", st.a}, {"search_width", st.search_width}, {"argmax_n", st.argmax_n}});
  }
  Json sidecar;
  sidecar["schema"] = kSchemaVersion;
  sidecar["command"] = "greedy";
  sidecar["B"] = b.elements();
  sidecar["alpha"] = alpha.str();
  sidecar["horizon"] = args.horizon;
  sidecar["b1"] = result.b1;
  sidecar["degenerate"] = result.degenerate;
  sidecar["element_count"] = result.set.elements().size();
  sidecar["steps"] = steps;
  sidecar["build_info"] = build_info_json();
  write_file(dir / "greedy_steps.json", sidecar.dump(2) + "\n");

  const DensityReport rep = density_report(sumset(result.set, b));
  const std::string ext = args.format == "csv" ? ".csv" : ".json";
  write_file(dir / ("greedy_density" + ext), report_payload(rep, args.format));

  std::cout << "greedy: |A| = " << result.set.elements().size() << ", (A+B)(N)/N = "
            << rep.tail_upper.approx() << " (target " << alpha.str() << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
  std::string mode;
  std::string alpha_text;
  std::string theta_text;
  std::uint64_t k = 2;
  std::uint64_t horizon = 0;
  std::string out_dir = ".";
  std::string format = "json";
};

int run_construct_rational(const ConstructArgs& args) {
  if (args.alpha_text.empty()) {
    throw CLI::ValidationError("--alpha", "rational mode needs a rational density");
  }
  if (!args.theta_text.empty()) {
    throw CLI::ValidationError("--theta", "rational mode takes --alpha, not --theta");
  }
  const DensityTarget alpha = parse_density(args.alpha_text);
  const auto params = rational_params(alpha, args.k);
  const PeriodicSet a = rational_construction(alpha, args.k);
  const std::uint64_t horizon = args.horizon ? args.horizon : 10 * params.modulus;

  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);
  write_file(dir / "rational_set.txt", set_as_text(materialize(a, horizon)));

  Json per_j = Json::array();
  for (std::uint64_t j = 1; j <= args.k; ++j) {
    const auto density = rational_jfold_density(params, j);
    const auto residues = jfold_residues(params, j);
    per_j.push_back(Json{{"j", j},
                         {"density", to_json(density)},
                         {"residues", residues}});
    std::cout << "j=" << j << "  d(jA) = " << j * params.m << "/" << params.modulus << " = "
              << density.str() << "\n";
  }
  Json summary;
  summary["schema"] = kSchemaVersion;
  summary["command"] = "construct-rational";
  summary["alpha"] = alpha.str();
  summary["k"] = args.k;
  summary["m"] = params.m;
  summary["n"] = params.n;
  summary["modulus"] = params.modulus;
  summary["H"] = params.h;
  summary["horizon"] = horizon;
  summary["jfold"] = per_j;
  summary["build_info"] = build_info_json();
  write_file(dir / "rational_summary.json", summary.dump(2) + "\n");
  return kExitOk;
}

int run_construct_beatty(const ConstructArgs& args) {
  if (args.theta_text.empty()) {
    throw CLI::ValidationError("--theta", "beatty mode needs a theta argument");
  }
  if (!args.alpha_text.empty()) {
    throw CLI::ValidationError("--alpha", "beatty mode takes --theta, not --alpha");
  }
  const Theta theta = parse_theta(args.theta_text);
  const std::uint64_t horizon = args.horizon ? args.horizon : 100000;

  const GroundSet a = beatty_construction(theta, args.k, horizon);
  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);
  write_file(dir / "beatty_set.txt", set_as_text(a));

  const double alpha_approx = 1.0 / theta_approx(theta);
  Json per_j = Json::array();
  GroundSet ja = a;
  for (std::uint64_t j = 1; j <= args.k; ++j) {
    if (j > 1) ja = sumset(ja, a);
    const DensityReport rep = density_report(ja);
    const std::string ext = args.format == "csv" ? ".csv" : ".json";
    write_file(dir / ("beatty_density_j" + std::to_string(j) + ext),
               report_payload(rep, args.format));
    const double target = alpha_approx * static_cast<double>(j) / static_cast<double>(args.k);
    per_j.push_back(Json{{"j", j},
                         {"count", ja.count_total()},
                         {"tail_lower", to_json(rep.tail_lower)},
                         {"tail_upper", to_json(rep.tail_upper)},
                         {"target_approx", target}});
    std::cout << "j=" << j << "  (jA)(N)/N ~ " << rep.tail_upper.approx() << "  target ~ "
              << target << "\n";
  }
  Json summary;
  summary["schema"] = kSchemaVersion;
  summary["command"] = "construct-beatty";
  summary["theta"] = theta_str(theta);
  summary["k"] = args.k;
  summary["horizon"] = horizon;
  summary["jfold"] = per_j;
  summary["build_info"] = build_info_json();
  write_file(dir / "beatty_summary.json", summary.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SumsetArgs {
  std::string in_path;
  std::string b_list;
  std::uint64_t j = 1;
  std::string out_path;
  bool binary = false;
};

int run_sumset(const SumsetArgs& args) {
  GroundSet g = read_set_file(args.in_path);
  if (!args.b_list.empty()) g = sumset(g, FiniteSet::parse(args.b_list));
  if (args.j > 1) g = iterated_sumset(g, args.j);
  const std::string payload = args.binary ? set_as_binary(g) : set_as_text(g);
  if (args.out_path.empty()) {
    std::cout << payload;
  } else {
    write_file(args.out_path, payload);
  }
  return kExitOk;
}

struct DensityArgs {
  std::string in_path;
  std::string window = "1/2";
  std::uint64_t grid = 1024;
  std::string format = "json";
  std::string out_path;
};

int run_density(const DensityArgs& args) {
  const GroundSet g = read_set_file(args.in_path);
  DensityOptions opts;
  opts.window_fraction = parse_density(args.window);
  opts.grid = args.grid;
  const std::string payload = report_payload(density_report(g, opts), args.format);
  if (args.out_path.empty()) {
    std::cout << payload;
  } else {
    write_file(args.out_path, payload);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::string theta_text = "sqrt:2";
  std::uint64_t k = 2;
  std::uint64_t j = 2;
  std::string eps_text;
  std::uint64_t horizon = 0;
  std::string b_list = "0,1";
  std::string alpha_text = "1/2";
  std::uint64_t instances = 200;
  std::uint64_t seed = 1;
};

int run_verify_case_b(const VerifyArgs& args) {
  const Theta theta = parse_theta(args.theta_text);
  const DensityTarget eps =
      args.eps_text.empty() ? DensityTarget(1, 8 * args.k) : parse_density(args.eps_text);
  const std::uint64_t horizon = args.horizon ? args.horizon : 10000;
  const auto rep = verify_case_b(theta, args.j, args.k, eps, horizon);
  for (const auto& w : rep.witnesses) {
    std::cout << "band " << w.band << ": m_i=" << w.m_i << " floor=" << w.floor_m_theta
              << " in_A=" << (w.in_a ? "yes" : "no") << " checked=" << w.checked
              << " skipped=" << w.skipped_small << " violations=" << w.violations << "\n";
  }
  std::cout << "case-b: checked=" << rep.total_checked << " violations=" << rep.total_violations
            << (rep.inconclusive ? " INCONCLUSIVE" : "") << "\n";
  if (rep.inconclusive) return kExitInconclusive;
  return rep.total_violations == 0 ? kExitOk : kExitVerifyFail;
}

int run_verify_oracle(const VerifyArgs& args) {
  std::mt19937_64 rng(args.seed);
  std::uint64_t failures = 0;
  const std::uint64_t max_horizon = args.horizon ? args.horizon : 2000;
  for (std::uint64_t trial = 0; trial < args.instances; ++trial) {
    const std::uint64_t horizon = 50 + rng() % (max_horizon - 49);
    std::vector<std::uint64_t> elems;
    const double density = 0.02 + 0.4 * static_cast<double>(rng() % 100) / 100.0;
    for (std::uint64_t x = 0; x <= horizon; ++x) {
      if (static_cast<double>(rng() % 1000) < density * 1000) elems.push_back(x);
    }
    if (trial % 2 == 0) {
      std::vector<std::uint64_t> b_elems;
      const std::size_t bsz = 1 + rng() % 6;
      for (std::size_t i = 0; i < bsz; ++i) b_elems.push_back(rng() % (horizon / 2 + 1));
      const FiniteSet b(b_elems);
      const auto fast = sumset(GroundSet::from_elements(horizon, elems), b).elements();
      if (fast != oracle::naive_sumset(elems, b.elements(), horizon)) ++failures;
    } else {
      std::vector<std::uint64_t> sparse;
      for (std::size_t i = 0; i < elems.size() && sparse.size() < 200; i += 3) {
        sparse.push_back(elems[i]);
      }
      const std::uint64_t j = 1 + rng() % 4;
      const auto fast = iterated_sumset(GroundSet::from_elements(horizon, sparse), j).elements();
      if (fast != oracle::naive_jfold(sparse, j, horizon)) ++failures;
    }
  }
  std::cout << "oracle: " << args.instances << " instances, " << failures << " mismatches\n";
  return failures == 0 ? kExitOk : kExitVerifyFail;
}

int run_verify_case_a(const VerifyArgs& args) {
  const DensityTarget alpha = parse_density(args.alpha_text);
  const auto params = rational_params(alpha, args.k);
  const auto a = materialize(rational_construction(alpha, args.k), 10 * params.modulus);
  std::uint64_t failures = 0;
  GroundSet ja = a;
  for (std::uint64_t j = 1; j <= args.k; ++j) {
    if (j > 1) ja = sumset(ja, a);
    const auto expected = jfold_residues(params, j);
    std::vector<bool> seen(params.modulus, false);
    ja.for_each_element([&](std::uint64_t x) { seen[x % params.modulus] = true; });
    std::vector<std::uint64_t> got;
    for (std::uint64_t r = 0; r < params.modulus; ++r) {
      if (seen[r]) got.push_back(r);
    }
    const DensityTarget want(j * params.m, params.modulus);
    const DensityTarget jak(j * alpha.num(), alpha.den() * args.k);
    const bool ok = got == expected && want == jak;
    if (!ok) ++failures;
    std::cout << "j=" << j << " residues " << (got == expected ? "ok" : "MISMATCH")
              << " density " << want.str() << (want == jak ? " == " : " != ") << "j*alpha/k\n";
  }
  return failures == 0 ? kExitOk : kExitVerifyFail;
}

int run_verify_greedy(const VerifyArgs& args) {
  const FiniteSet b = FiniteSet::parse(args.b_list);
  const DensityTarget alpha = parse_density(args.alpha_text);
  const std::uint64_t horizon = args.horizon ? args.horizon : 100000;
  const auto result = build_greedy(b, alpha, horizon);
  const auto s = sumset(result.set, b);

  bool invariant_ok = true;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    if ((unsigned __int128)s.counting(static_cast<std::int64_t>(n)) * alpha.den() >
        (unsigned __int128)alpha.num() * n) {
      invariant_ok = false;
      break;
    }
  }
  bool bounds_ok = true;
  for (std::size_t m = 0; m < result.steps.size(); ++m) {
    const auto bound = (b.k() * (m + 1) * alpha.den() + alpha.num() - 1) / alpha.num();
    if (result.steps[m].a > bound) bounds_ok = false;
  }
  const auto violations = check_ratio_monotone(result.set, result.b_normalized);
  std::cout << "greedy invariant " << (invariant_ok ? "ok" : "VIOLATED") << ", bounds "
            << (bounds_ok ? "ok" : "VIOLATED") << ", ratio-monotone violations "
            << violations.size() << "\n";
  return invariant_ok && bounds_ok && violations.empty() ? kExitOk : kExitVerifyFail;
}

int run_oracle_calibrate(const VerifyArgs& args) {
  const DensityTarget alpha = parse_density(args.alpha_text);
  const auto elements =
      oracle::naive_greedy(FiniteSet::parse(args.b_list).elements(), alpha, args.horizon);
  std::cout << "horizon=" << args.horizon << "\n";
  for (auto x : elements) std::cout << x << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sumsets with prescribed asymptotic density: constructions, kernels, reports"};
  app.require_subcommand(1);

  GreedyArgs greedy_args;
  auto* cmd_greedy = app.add_subcommand("greedy", "Greedy A with d(A+B) = alpha for finite B");
  cmd_greedy->add_option("--B", greedy_args.b_list, "finite B as comma list, e.g. 0,1,5")
      ->required();
  cmd_greedy->add_option("--alpha", greedy_args.alpha_text, "target density, fraction or decimal")
      ->required();
  cmd_greedy->add_option("--N", greedy_args.horizon, "horizon")->required();
  cmd_greedy->add_option("--out-dir", greedy_args.out_dir, "output directory");
  cmd_greedy->add_option("--format", greedy_args.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  ConstructArgs construct_args;
  auto* cmd_construct = app.add_subcommand("construct", "Explicit sets with d(jA) = j*alpha/k");
  cmd_construct->add_option("--mode", construct_args.mode, "rational|beatty")
      ->required()
      ->check(CLI::IsMember({"rational", "beatty"}));
  cmd_construct->add_option("--alpha", construct_args.alpha_text, "rational density (rational mode)");
  cmd_construct->add_option("--theta", construct_args.theta_text,
                            "theta as sqrt:d | quad:u,v,w,d | fixed:decimal,F (beatty mode)");
  cmd_construct->add_option("--k", construct_args.k, "fold count k >= 2");
  cmd_construct->add_option("--N", construct_args.horizon, "horizon (default: 10 periods / 1e5)");
  cmd_construct->add_option("--out-dir", construct_args.out_dir, "output directory");
  cmd_construct->add_option("--format", construct_args.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  SumsetArgs sumset_args;
  auto* cmd_sumset = app.add_subcommand("sumset", "A+B and jA over serialized sets");
  cmd_sumset->add_option("--in", sumset_args.in_path, "input set file (text or binary)")
      ->required();
  cmd_sumset->add_option("--B", sumset_args.b_list, "finite B as comma list");
  cmd_sumset->add_option("--j", sumset_args.j, "fold count");
  cmd_sumset->add_option("--out", sumset_args.out_path, "output file (default stdout)");
  cmd_sumset->add_flag("--binary", sumset_args.binary, "write the binary set format");

  DensityArgs density_args;
  auto* cmd_density = app.add_subcommand("density", "Density report for a serialized set");
  cmd_density->add_option("--in", density_args.in_path, "input set file")->required();
  cmd_density->add_option("--window", density_args.window, "tail window fraction (default 1/2)");
  cmd_density->add_option("--grid", density_args.grid, "ratio curve sample count");
  cmd_density->add_option("--format", density_args.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_density->add_option("--out", density_args.out_path, "output file (default stdout)");

  VerifyArgs verify_args;
  auto* cmd_verify = app.add_subcommand("verify", "Verification suites (pass/fail)");
  cmd_verify->add_option("--suite", verify_args.suite, "case-b|oracle|case-a|greedy")->required();
  cmd_verify->add_option("--theta", verify_args.theta_text, "theta (case-b)");
  cmd_verify->add_option("--k", verify_args.k, "k");
  cmd_verify->add_option("--j", verify_args.j, "j (case-b)");
  cmd_verify->add_option("--eps", verify_args.eps_text, "epsilon < 1/(4k) (default 1/(8k))");
  cmd_verify->add_option("--N", verify_args.horizon, "horizon");
  cmd_verify->add_option("--B", verify_args.b_list, "finite B (greedy suite)");
  cmd_verify->add_option("--alpha", verify_args.alpha_text, "density (case-a / greedy)");
  cmd_verify->add_option("--instances", verify_args.instances, "random instances (oracle)");
  cmd_verify->add_option("--seed", verify_args.seed, "random seed (oracle)");

  VerifyArgs calibrate_args;
  auto* cmd_calibrate =
      app.add_subcommand("oracle-calibrate", "Run the naive greedy oracle and print the set");
  cmd_calibrate->group("");  // hidden
  cmd_calibrate->add_option("--B", calibrate_args.b_list)->required();
  cmd_calibrate->add_option("--alpha", calibrate_args.alpha_text)->required();
  cmd_calibrate->add_option("--N", calibrate_args.horizon)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_greedy->parsed()) return run_greedy(greedy_args);
    if (cmd_construct->parsed()) {
      return construct_args.mode == "rational" ? run_construct_rational(construct_args)
                                               : run_construct_beatty(construct_args);
    }
    if (cmd_sumset->parsed()) return run_sumset(sumset_args);
    if (cmd_density->parsed()) return run_density(density_args);
    if (cmd_verify->parsed()) {
      if (verify_args.suite == "case-b") return run_verify_case_b(verify_args);
      if (verify_args.suite == "oracle") return run_verify_oracle(verify_args);
      if (verify_args.suite == "case-a") return run_verify_case_a(verify_args);
      if (verify_args.suite == "greedy") return run_verify_greedy(verify_args);
      std::cerr << "unknown suite '" << verify_args.suite << "'\n";
      return kExitUsage;
    }
    if (cmd_calibrate->parsed()) return run_oracle_calibrate(calibrate_args);
  } catch (const PrecisionError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
