#include "latcert.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace latcert;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "json";
  unsigned threads = 0;
  unsigned precision = kDefaultPrecisionDigits;
};

struct ShellSource {
  std::string shell_path;
  std::string code = "rm2_5";
};

unsigned threads_from(const Common& c, const CLI::App& app) {
  if (app.get_option("--threads")->count() > 0) return c.threads;
  if (const char* env = std::getenv("LATCERT_THREADS")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw UsageError(std::string("LATCERT_THREADS is not a number: ") + env);
    }
  }
  return 0;
}

BinaryCode load_code(const std::string& source) {
  if (source == "rm2_5") return reed_muller_2_5();
  if (source == "xqr32") return extended_quadratic_residue_32();
  return load_generator_matrix(source);
}

Shell load_shell(const ShellSource& s) {
  if (!s.shell_path.empty()) {
    std::ifstream in(s.shell_path);
    if (!in) throw UsageError("cannot open " + s.shell_path);
    return read_shell(in, s.shell_path);
  }
  return build_shell(load_code(s.code), s.code);
}

FactoredPolynomial load_poly(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) {
    const auto b = find_builtin(spec.substr(8));
    if (!b) throw UsageError("unknown builtin polynomial '" + spec.substr(8) + "' (maxcode10, design7, p7)");
    return b->polynomial;
  }
  return load_polynomial(spec);
}

void render_text(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    const std::string key = j.is_object() ? it.key() : "-";
    const bool scalar_array =
        v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
    if (v.is_primitive() || scalar_array || v.empty()) {
      out << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    } else {
      out << pad << key << ":\n";
      render_text(out, v, indent + 1);
    }
  }
}

int emit(const Common& c, const Json& report, bool valid) {
  if (c.format == "json") {
    std::cout << report.dump(2) << '\n';
  } else {
    render_text(std::cout, report, 0);
  }
  return valid ? 0 : 1;
}

PassOptions pass_options(unsigned threads, bool progress) {
  PassOptions p;
  p.threads = threads;
  if (progress) {
    p.progress = [last = std::size_t{0}](std::size_t done, std::size_t total) mutable {
      const std::size_t pct = total ? done * 100 / total : 100;
      if (pct != last) {
        std::cerr << "\r  " << pct << "% (" << done << "/" << total << ")" << std::flush;
        last = pct;
        if (done == total) std::cerr << '\n';
      }
    };
  }
  return p;
}

void add_shell_options(CLI::App* cmd, ShellSource& s) {
  cmd->add_option("--shell", s.shell_path, "shell file written by `build`")->check(CLI::ExistingFile);
  cmd->add_option("--code", s.code, "build the shell from rm2_5, xqr32 or a generator matrix file")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latcert: exact certificates for the minimal vectors of extremal even unimodular lattices in dimension 32"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--threads", common.threads, "worker threads for pair passes (0 = all cores; env LATCERT_THREADS)");
  app.add_option("--precision", common.precision, "decimal digits for inexact potentials")
      ->check(CLI::Range(16u, 10000u))
      ->capture_default_str();

  std::string code_source = "rm2_5", out_path;
  auto* build = app.add_subcommand("build", "construct the norm-4 shell from a binary code");
  build->add_option("--code", code_source, "rm2_5, xqr32 or a 16x32 generator matrix file")->capture_default_str();
  build->add_option("--out", out_path, "shell file to write")->required();

  ShellSource vsrc;
  bool full = false;
  std::size_t sample = 1000;
  std::uint64_t seed = 1;
  int cap = kDefaultStrengthCap;
  auto* verify = app.add_subcommand("verify", "inner products, distance invariance, moments and design strength");
  add_shell_options(verify, vsrc);
  verify->add_flag("--full", full, "check distance invariance at every point");
  verify->add_option("--sample", sample, "points checked without --full")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--seed", seed, "sampling seed")->capture_default_str();
  verify->add_option("--cap", cap, "highest moment computed")->check(CLI::Range(1, kDefaultMaxGegenbauerDegree))->capture_default_str();

  std::string poly, region = "{}", s_max;
  int dim = 32, strength = 0, tau = 0;
  auto* cmax = app.add_subcommand("certify-max", "upper bound for T-avoiding s-codes that are designs");
  cmax->add_option("--poly", poly, "builtin:<name> or polynomial JSON file")->required();
  cmax->add_option("--dim", dim, "ambient dimension")->check(CLI::Range(2, 100000))->capture_default_str();
  cmax->add_option("--T", region, "avoided inner products, e.g. \"(0,1/4)\"")->capture_default_str();
  cmax->add_option("--s", s_max, "maximal inner product")->required();
  cmax->add_option("--strength", strength, "assumed design strength")->required()->check(CLI::NonNegativeNumber);

  auto* cdes = app.add_subcommand("certify-design", "lower bound for T-avoiding designs");
  cdes->add_option("--poly", poly, "builtin:<name> or polynomial JSON file")->required();
  cdes->add_option("--dim", dim, "ambient dimension")->check(CLI::Range(2, 100000))->capture_default_str();
  cdes->add_option("--T", region, "avoided inner products")->capture_default_str();
  cdes->add_option("--tau", tau, "design strength")->required()->check(CLI::NonNegativeNumber);

  ShellSource esrc;
  std::string potential = "invlin";
  auto* energy = app.add_subcommand("energy", "energy lower bound and the shell's energy");
  add_shell_options(energy, esrc);
  energy->add_option("--potential", potential, "invlin, expt, riesz:<s>, gauss:<a>, const:<c>, poly:<c0>,<c1>,...")
      ->capture_default_str();

  ShellSource ksrc;
  std::size_t vcount = 100;
  auto* venkov = app.add_subcommand("venkov", "e_{2,2} on the witness pair and on sampled orthogonal pairs");
  add_shell_options(venkov, ksrc);
  venkov->add_option("--sample", vcount, "sampled pairs (0 = witness only)")->capture_default_str();
  venkov->add_option("--seed", seed, "sampling seed")->capture_default_str();

  bool quick = false;
  auto* selftest = app.add_subcommand("selftest", "run the regression fixtures");
  selftest->add_flag("--quick", quick, "sample 1000 points instead of checking invariance everywhere");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const unsigned threads = threads_from(common, app);
    PrecisionScope precision(common.precision);

    if (build->parsed()) {
      const BinaryCode code = load_code(code_source);
      const CodeReport cr = code_report(code);
      const ExtremalVerdict ext = check_extremal(code);
      const Shell shell = build_shell(code, code_source);
      std::ofstream out(out_path);
      if (!out) throw UsageError("cannot write " + out_path);
      write_shell(out, shell);
      const bool ok = ext.extremal && shell.size() == kExtremalShellSize;
      Json j = {{"code", code_source},
                {"code_report", json_of(cr)},
                {"extremal", ext.extremal},
                {"norm2_vectors", ext.norm2_vectors},
                {"count", shell.size()},
                {"families",
                 {{"pairs", shell.families().pairs}, {"octads", shell.families().octads}, {"half", shell.families().half}}},
                {"out", out_path},
                {"valid", ok}};
      return emit(common, j, ok);
    }
    if (verify->parsed()) {
      const Shell shell = load_shell(vsrc);
      if (full) std::cerr << "checking distance invariance at all " << shell.size() << " points\n";
      const auto r = verify_shell(shell, full ? Sampling::every_point() : Sampling::random(sample, seed),
                                  pass_options(threads, full), cap);
      return emit(common, json_of(r), r.valid);
    }
    if (cmax->parsed() || cdes->parsed()) {
      FactoredPolynomial p;
      IntervalRegion T;
      Rational s;
      try {
        p = load_poly(poly);
        T = IntervalRegion::parse(region);
        if (cmax->parsed()) s = parse_rational(s_max);
      } catch (const ParseError& e) {
        throw UsageError(e.what());
      }
      const auto c = cmax->parsed() ? certify_max_code(p, dim, T, s, strength) : certify_min_design(p, dim, T, tau);
      return emit(common, json_of(c), c.valid);
    }
    if (energy->parsed()) {
      Potential h;
      try {
        h = parse_potential(potential);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const Shell shell = load_shell(esrc);
      const auto hist = histogram(shell, pass_options(threads, false));
      Json j;
      bool ok = false;
      if (h.exact_on_rationals()) {
        auto c = energy_lower_bound<Rational>(h);
        attach_code_energy(c, hist, h);
        j = json_of(c);
        ok = c.valid;
      } else {
        auto c = energy_lower_bound<Real>(h);
        attach_code_energy(c, hist, h);
        j = json_of(c);
        ok = c.valid;
      }
      return emit(common, j, ok);
    }
    if (venkov->parsed()) {
      const Shell shell = load_shell(ksrc);
      const auto [x, z] = venkov_witness();
      const int w = venkov_e22(shell, x, z);
      bool ok = w == 60;
      Json samples = Json::array();
      if (vcount > 0) {
        for (const auto& v : venkov_sample(shell, vcount, seed)) {
          samples.push_back({{"x", v.x}, {"z", v.z}, {"e22", v.e22}});
          ok = ok && v.e22 % 2 == 0 && v.e22 >= 0 && v.e22 <= 60;
        }
      }
      Json j = {{"witness_e22", w}, {"seed", seed}, {"samples", samples}, {"valid", ok}};
      return emit(common, j, ok);
    }
    if (selftest->parsed()) {
      RegressionOptions ro;
      ro.pass = pass_options(threads, false);
      ro.full_invariance = !quick;
      if (common.format == "text") {
        ro.on_result = [](const RegressionCheck& c) {
          std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")")
                    << std::endl;
        };
      }
      const auto checks = run_regression(ro);
      bool ok = true;
      Json arr = Json::array();
      for (const auto& c : checks) {
        ok = ok && c.passed;
        arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      }
      if (common.format == "json") std::cout << Json{{"checks", arr}, {"valid", ok}}.dump(2) << '\n';
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
