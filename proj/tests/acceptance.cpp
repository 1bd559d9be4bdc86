// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "latcert.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace latcert;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string secs(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << "s";
  return o.str();
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

// Everything the per-code criteria need, computed once per code.
struct CodeRun {
  std::string name;
  std::size_t shell_size = 0;
  double build_seconds = 0;
  bool extremal = false;
  double extremal_seconds = 0;
  InnerProductHistogram hist;
  double hist_seconds = 0;
  InvarianceReport sampled;
  double sampled_seconds = 0;
  InvarianceReport full;
  double full_seconds = 0;
  MomentVector moments;
  Rational invlin_bound, invlin_energy;
  bool invlin_valid = false;
  double invlin_seconds = 0;
  Real expt_bound, expt_energy;
  bool expt_valid = false;
  double expt_seconds = 0;
  int witness = 0;
  std::vector<int> venkov;
  double venkov_seconds = 0;
};

CodeRun run_code(const std::string& name, const BinaryCode& code) {
  CodeRun r;
  r.name = name;
  std::cerr << "[" << name << "] building shell\n";
  auto t0 = Clock::now();
  const Shell shell = build_shell(code, name);
  r.build_seconds = since(t0);
  r.shell_size = shell.size();

  t0 = Clock::now();
  r.extremal = check_extremal(code).extremal;
  r.extremal_seconds = since(t0);

  std::cerr << "[" << name << "] full pair pass\n";
  t0 = Clock::now();
  r.hist = histogram(shell);
  r.hist_seconds = since(t0);

  t0 = Clock::now();
  r.sampled = check_distance_invariance(shell, Sampling::random(1000, 1));
  r.sampled_seconds = since(t0);

  std::cerr << "[" << name << "] distance invariance at every point\n";
  t0 = Clock::now();
  r.full = check_distance_invariance(shell, Sampling::every_point());
  r.full_seconds = since(t0);

  r.moments = moments(r.hist, shell.size(), 32, 12);

  t0 = Clock::now();
  {
    const auto h = potentials::invlin();
    auto c = energy_lower_bound<Rational>(h);
    attach_code_energy(c, r.hist, h);
    r.invlin_bound = c.lower_bound;
    r.invlin_energy = *c.code_energy;
    r.invlin_valid = c.valid;
  }
  r.invlin_seconds = since(t0);

  t0 = Clock::now();
  {
    PrecisionScope ps(60);
    const auto h = potentials::expt();
    auto c = energy_lower_bound<Real>(h);
    attach_code_energy(c, r.hist, h);
    r.expt_bound = c.lower_bound;
    r.expt_energy = *c.code_energy;
    r.expt_valid = c.valid;
  }
  r.expt_seconds = since(t0);

  t0 = Clock::now();
  const auto [x, z] = venkov_witness();
  r.witness = venkov_e22(shell, x, z);
  for (const auto& s : venkov_sample(shell, 100, 1)) r.venkov.push_back(s.e22);
  r.venkov_seconds = since(t0);
  return r;
}

Verdict criterion_build(const CodeRun& r) {
  Verdict v;
  v.require(r.shell_size == kExtremalShellSize, r.name + " shell has " + std::to_string(r.shell_size) + " vectors");
  v.require(r.build_seconds < 60, r.name + " build took " + secs(r.build_seconds));
  v.note(r.name + " " + std::to_string(r.shell_size) + " in " + secs(r.build_seconds));
  return v;
}

Verdict criterion_extremal(const CodeRun& r) {
  Verdict v;
  v.require(r.extremal, r.name + " has norm-2 vectors");
  v.require(r.extremal_seconds < 1, r.name + " check took " + secs(r.extremal_seconds));
  v.note(r.name + " " + secs(r.extremal_seconds));
  return v;
}

Verdict criterion_inner_products(const CodeRun& r) {
  Verdict v;
  v.require(r.hist.support() == shell_inner_products(), r.name + " support differs");
  v.require(r.hist.total() == kExtremalShellSize * (kExtremalShellSize - 1), r.name + " pair total wrong");
  v.require(r.hist_seconds <= 1800, r.name + " pair pass took " + secs(r.hist_seconds));
  v.require(r.sampled_seconds <= 30, r.name + " sampled pass took " + secs(r.sampled_seconds));
  v.note(r.name + " full " + secs(r.hist_seconds) + ", sampled " + secs(r.sampled_seconds));
  return v;
}

Verdict criterion_distribution(const CodeRun& r) {
  Verdict v;
  const auto expect = shell_distribution();
  v.require(r.sampled.invariant && r.sampled.points_checked == 1000 && r.sampled.distribution == expect,
            r.name + " sampled distribution differs");
  v.require(r.full.invariant && r.full.points_checked == kExtremalShellSize && r.full.distribution == expect,
            r.name + " full distribution differs");
  v.note(r.name + " all " + std::to_string(r.full.points_checked) + " points in " + secs(r.full_seconds));
  return v;
}

Verdict criterion_moments(const CodeRun& r) {
  Verdict v;
  const auto& m = r.moments;
  for (int i = 1; i <= 7; ++i) v.require(m[i] == 0, r.name + " M_" + std::to_string(i) + " = " + to_string(m[i]));
  v.require(m[9] == 0, r.name + " M_9 != 0");
  v.require(m[10] == 0, r.name + " M_10 != 0");
  v.require(m[8] != 0, r.name + " M_8 = 0");
  v.note(r.name + " M_8 = " + to_string(m[8]));
  return v;
}

Verdict criterion_energy(const CodeRun& r) {
  Verdict v;
  v.require(r.invlin_valid && r.invlin_bound == r.invlin_energy, r.name + " 1/(2-2t) bound not attained exactly");
  PrecisionScope ps(60);
  const Real rel = abs(r.expt_energy - r.expt_bound) / abs(r.expt_bound);
  v.require(r.expt_valid && rel <= Real("1e-20"), r.name + " e^t relative gap " + to_string(rel, 5));
  v.require(r.invlin_seconds < 10 && r.expt_seconds < 10,
            r.name + " certificates took " + secs(r.invlin_seconds) + ", " + secs(r.expt_seconds));
  v.note(r.name + " bound " + to_string(r.invlin_bound) + ", e^t rel gap " + to_string(rel, 3));
  return v;
}

Verdict criterion_venkov(const CodeRun& r) {
  Verdict v;
  v.require(r.witness == 60, r.name + " witness gives " + std::to_string(r.witness));
  v.require(r.venkov.size() == 100, r.name + " sample size");
  for (int e : r.venkov) v.require(e % 2 == 0 && e >= 0 && e <= 60, r.name + " sampled value " + std::to_string(e));
  v.require(r.venkov_seconds < 60, r.name + " took " + secs(r.venkov_seconds));
  std::map<int, int> seen;
  for (int e : r.venkov) ++seen[e];
  std::string vals;
  for (const auto& [e, c] : seen) vals += (vals.empty() ? "" : ",") + std::to_string(e);
  v.note(r.name + " values {" + vals + "}");
  return v;
}

Verdict both(Verdict (*f)(const CodeRun&), const CodeRun& a, const CodeRun& b) {
  Verdict va = f(a), vb = f(b);
  Verdict out;
  out.pass = va.pass && vb.pass;
  out.detail = va.detail + "; " + vb.detail;
  return out;
}

Verdict criterion_expansions() {
  Verdict v;
  for (const char* name : {"maxcode10", "p7"}) {
    const auto b = *find_builtin(name);
    const auto e = gegenbauer_expand(32, b.polynomial.expand());
    v.require(e.coeffs == b.expected.coeffs, std::string(name) + " expansion differs");
  }
  const auto emax = gegenbauer_expand(32, find_builtin("maxcode10")->polynomial.expand());
  v.require(emax.coeffs.size() == 11 && emax.coeffs[8] == 0, "f_8 != 0");
  v.require(is_positive_definite(emax).negative_indices == std::vector<int>{2, 3}, "negative indices not {2,3}");
  v.note("maxcode10 11 coefficients with f_2, f_3 < 0; p7 8 coefficients");
  return v;
}

Verdict criterion_certificates() {
  Verdict v;
  auto t0 = Clock::now();
  const auto c = certify_max_code(find_builtin("maxcode10")->polynomial, 32, IntervalRegion::parse("(0,1/4)"),
                                  parse_rational("1/2"), 3);
  const double t_max = since(t0);
  t0 = Clock::now();
  const auto d = certify_min_design(find_builtin("design7")->polynomial, 32, IntervalRegion::parse("(-1/4,0)U(1/4,1/2)"), 7);
  const double t_des = since(t0);
  v.require(c.valid && c.bound == 146880, "max-code: valid " + std::to_string(c.valid) + ", bound " + to_string(c.bound));
  v.require(d.valid && d.bound == 146880, "design: valid " + std::to_string(d.valid) + ", bound " + to_string(d.bound));
  v.require(t_max < 1 && t_des < 1, "too slow");
  v.note("max-code " + secs(t_max) + ", design " + secs(t_des));
  return v;
}

Verdict criterion_quadrature() {
  Verdict v;
  const auto d = distribution_from_design(shell_inner_products(), kExtremalShellSize, 32, 7);
  std::mt19937_64 rng(2024);
  int held = 0;
  for (int i = 0; i < 200; ++i) held += quadrature_check(d, random_rational_polynomial(rng, 7), 32, kExtremalShellSize, 7).holds;
  v.require(held == 200, std::to_string(200 - held) + " polynomials fail");
  const auto t2 = quadrature_check(d, Polynomial::monomial(2), 32, kExtremalShellSize, 7);
  v.require(t2.lhs == 4590 && t2.rhs == 4590, "t^2 gives " + to_string(t2.lhs) + " vs " + to_string(t2.rhs));
  v.note("200/200, t^2 -> 4590");
  return v;
}

Verdict criterion_main_identity(const CodeRun& r) {
  Verdict v;
  std::mt19937_64 rng(99);
  const Rational N(static_cast<unsigned long>(kExtremalShellSize));
  const auto m = moments(r.hist, kExtremalShellSize, 32, 10);
  int held = 0;
  for (int k = 0; k < 50; ++k) {
    const Polynomial f = random_rational_polynomial(rng, 10);
    Rational lhs = f(1) * N;
    for (const auto& [t, c] : r.hist.counts) lhs += f(t) * Rational(static_cast<unsigned long>(c));
    const auto e = gegenbauer_expand(32, f);
    Rational rhs = e.constant_term() * N * N;
    for (int i = 1; i <= e.degree(); ++i) rhs += e.coefficient(static_cast<std::size_t>(i)) * m[i];
    held += lhs == rhs;
  }
  v.require(held == 50, std::to_string(50 - held) + " polynomials fail");
  v.note("50/50 on " + r.name);
  return v;
}

Verdict criterion_dual_form() {
  Verdict v;
  const auto c = energy_lower_bound<Rational>(potentials::invlin());
  v.require(c.lower_bound == c.lower_bound_dual, "forms differ");
  const Rational by_hand = Rational(146880) * (Rational(1, 4) + Rational(1240, 3) + Rational(31744 * 2, 5) +
                                               Rational(80910, 2) + Rational(31744 * 2, 3) + Rational(1240));
  v.require(c.lower_bound == by_hand, "quadrature form differs from the hand expansion");
  v.note("both " + to_string(c.lower_bound));
  return v;
}

Verdict criterion_cross_code(const CodeRun& a, const CodeRun& b) {
  Verdict v;
  for (auto f : {criterion_build, criterion_extremal, criterion_inner_products, criterion_distribution, criterion_moments,
                 criterion_energy, criterion_venkov}) {
    const auto r = f(b);
    v.require(r.pass, r.detail);
  }
  v.require(a.hist.counts == b.hist.counts, "histograms differ");
  v.require(a.moments.values == b.moments.values, "moments differ");
  v.require(a.full.distribution == b.full.distribution, "distributions differ");
  v.require(a.invlin_energy == b.invlin_energy, "energies differ");
  v.require(a.witness == b.witness, "witness values differ");
  v.note(b.name + " matches " + a.name);
  return v;
}

}  // namespace

int main() {
  const auto t_start = Clock::now();
  const CodeRun rm = run_code("rm2_5", reed_muller_2_5());
  const CodeRun qr = run_code("xqr32", extended_quadratic_residue_32());

  const std::vector<std::pair<std::string, Verdict>> results = {
      {"shell construction yields 146880 vectors", both(criterion_build, rm, qr)},
      {"norm-2 layer is empty", both(criterion_extremal, rm, qr)},
      {"inner products are {-1,-1/2,-1/4,0,1/4,1/2}", both(criterion_inner_products, rm, qr)},
      {"distance distribution at sampled and all points", both(criterion_distribution, rm, qr)},
      {"design strength 7 with M_9 = M_10 = 0, M_8 != 0", both(criterion_moments, rm, qr)},
      {"Gegenbauer expansions reproduce the published coefficients", criterion_expansions()},
      {"bound certificates give 146880", criterion_certificates()},
      {"quadrature holds for 200 random degree-7 polynomials", criterion_quadrature()},
      {"main identity holds for 50 random degree-10 polynomials", criterion_main_identity(rm)},
      {"energy bound attained by the shell", both(criterion_energy, rm, qr)},
      {"energy bound quadrature and interpolation forms agree", criterion_dual_form()},
      {"Venkov e22: witness 60, samples even in [0,60]", both(criterion_venkov, rm, qr)},
      {"extended QR lattice passes identically", criterion_cross_code(rm, qr)},
  };

  int failed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [title, v] = results[i];
    std::printf("%s %2zu  %s  [%s]\n", v.pass ? "PASS" : "FAIL", i + 1, title.c_str(), v.detail.c_str());
    failed += !v.pass;
  }
  std::printf("%zu/%zu criteria passed in %s\n", results.size() - static_cast<std::size_t>(failed), results.size(),
              secs(since(t_start)).c_str());
  return failed == 0 ? 0 : 1;
}
