#pragma once

// Published fixtures checked end to end: polynomial values and expansions,
// both bound certificates, the energy bound and the Reed-Muller shell.

#include "latcert/energycert.hpp"
#include "latcert/lattice32.hpp"
#include "latcert/lpcert.hpp"
#include "latcert/sphercode.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace latcert {

struct RegressionCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RegressionOptions {
  PassOptions pass;
  bool full_invariance = true;
  std::function<void(const RegressionCheck&)> on_result;
};

/// Coefficients p/q with |p| <= 50, 1 <= q <= 12; degree chosen uniformly in [0, max_degree].
inline Polynomial random_rational_polynomial(std::mt19937_64& rng, int max_degree) {
  const int deg = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
  std::vector<Rational> c;
  for (int k = 0; k <= deg; ++k) {
    Rational q(static_cast<long>(rng() % 101) - 50, static_cast<long>(rng() % 12) + 1);
    q.canonicalize();
    c.push_back(q);
  }
  return Polynomial(std::move(c));
}

inline std::vector<Rational> shell_inner_products() {
  std::vector<Rational> v;
  for (const char* s : {"-1", "-1/2", "-1/4", "0", "1/4", "1/2"}) v.push_back(parse_rational(s));
  return v;
}

inline DistanceDistribution shell_distribution() {
  DistanceDistribution d;
  const char* t[] = {"-1", "-1/2", "-1/4", "0", "1/4", "1/2", "1"};
  const long a[] = {1, 1240, 31744, 80910, 31744, 1240, 1};
  for (int i = 0; i < 7; ++i) d.a[parse_rational(t[i])] = a[i];
  return d;
}

inline std::vector<RegressionCheck> run_regression(const RegressionOptions& opt = {}) {
  std::vector<RegressionCheck> out;
  auto record = [&](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
    if (opt.on_result) opt.on_result(out.back());
  };
  auto guarded = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      record(name, false, std::string("exception: ") + e.what());
    }
  };
  const auto q = [](const char* s) { return parse_rational(s); };
  const auto bmax = *find_builtin("maxcode10");
  const auto bdes = *find_builtin("design7");
  const auto b7 = *find_builtin("p7");

  guarded("max-code polynomial f(1)", [&] {
    record("max-code polynomial f(1)", bmax.polynomial(1) == q("675/1024") && bmax.polynomial.expand()(1) == q("675/1024"));
  });
  guarded("tight-design polynomial f(1)", [&] {
    record("tight-design polynomial f(1)", bdes.polynomial(1) == q("135/64") && bdes.polynomial.expand()(1) == q("135/64"));
  });
  guarded("P_2 normalization", [&] { record("P_2 normalization", gegenbauer_poly(32, 2)(1) == 1); });
  guarded("max-code polynomial expansion", [&] {
    const auto e = gegenbauer_expand(32, bmax.polynomial.expand());
    const auto pd = is_positive_definite(e);
    record("max-code polynomial expansion",
           e.coeffs == bmax.expected.coeffs && pd.negative_indices == std::vector<int>{2, 3},
           "f_8 = " + to_string(e.coefficient(8)));
  });
  guarded("tight-design f_0", [&] {
    const auto e = gegenbauer_expand(32, bdes.polynomial.expand());
    record("tight-design f_0", e.constant_term() == q("1/69632"));
  });
  guarded("P_7 expansion", [&] {
    const auto e = gegenbauer_expand(32, b7.polynomial.expand());
    record("P_7 expansion", e.coeffs == b7.expected.coeffs && is_positive_definite(e).positive_definite);
  });
  guarded("t + 1/2 positive definite", [&] {
    record("t + 1/2 positive definite",
           is_positive_definite(gegenbauer_expand(32, Polynomial({q("1/2"), q("1")}))).positive_definite);
  });
  guarded("max-code sign condition", [&] {
    const auto r = sign_on_region(bmax.polynomial, IntervalRegion::parse("[-1,1/2]").minus(IntervalRegion::parse("(0,1/4)")));
    record("max-code sign condition", r.verdict == Sign::nonpositive, to_string(r.verdict));
  });
  guarded("tight-design sign condition", [&] {
    const auto r = sign_on_region(bdes.polynomial,
                                  IntervalRegion::parse("[-1,1]").minus(IntervalRegion::parse("(-1/4,0)U(1/4,1/2)")));
    record("tight-design sign condition", r.verdict == Sign::nonnegative, to_string(r.verdict));
  });
  guarded("max-code certificate", [&] {
    const auto c = certify_max_code(bmax.polynomial, 32, IntervalRegion::parse("(0,1/4)"), q("1/2"), 3);
    record("max-code certificate", c.valid && c.bound == 146880, "bound " + to_string(c.bound));
  });
  guarded("max-code certificate needs strength 3", [&] {
    const auto c = certify_max_code(bmax.polynomial, 32, IntervalRegion::parse("(0,1/4)"), q("1/2"), 1);
    record("max-code certificate needs strength 3", !c.valid && c.offending_coefficients == std::vector<int>{2, 3});
  });
  guarded("tight-design certificate", [&] {
    const auto c = certify_min_design(bdes.polynomial, 32, IntervalRegion::parse("(-1/4,0)U(1/4,1/2)"), 7);
    record("tight-design certificate", c.valid && c.bound == 146880, "bound " + to_string(c.bound));
  });
  guarded("partial products positive definite", [&] {
    bool ok = true;
    for (const auto& p : partial_products(default_nodes(), 32)) ok = ok && p.definiteness.positive_definite;
    record("partial products positive definite", ok);
  });
  guarded("Hermite error sign", [&] {
    const auto r = error_sign_check(default_nodes(), IntervalRegion::parse("(-1/2,-1/4)U(1/4,1/2)"));
    record("Hermite error sign", r.is_nonnegative(), to_string(r.verdict));
  });
  guarded("distribution from design", [&] {
    record("distribution from design",
           distribution_from_design(shell_inner_products(), kExtremalShellSize, 32, 7) == shell_distribution());
  });
  guarded("quadrature on random degree-7 polynomials", [&] {
    std::mt19937_64 rng(7);
    const auto d = shell_distribution();
    bool ok = true;
    for (int i = 0; i < 50 && ok; ++i) {
      ok = quadrature_check(d, random_rational_polynomial(rng, 7), 32, kExtremalShellSize, 7).holds;
    }
    record("quadrature on random degree-7 polynomials", ok);
  });

  guarded("Reed-Muller shell", [&] {
    const auto code = reed_muller_2_5();
    const auto ext = check_extremal(code);
    record("Reed-Muller lattice has no norm-2 vectors", ext.extremal);
    const Shell shell = build_shell(code, "rm2_5");
    record("Reed-Muller shell size", shell.size() == kExtremalShellSize, std::to_string(shell.size()));

    const auto [x, z] = venkov_witness();
    const int e = venkov_e22(shell, x, z);
    record("Venkov witness", e == 60, std::to_string(e));
    bool ok = true;
    for (const auto& s : venkov_sample(shell, 100, 1)) ok = ok && s.e22 % 2 == 0 && s.e22 >= 0 && s.e22 <= 60;
    record("Venkov samples even in [0,60]", ok);

    const auto hist = histogram(shell, opt.pass);
    record("inner-product support", hist.support() == shell_inner_products());
    record("histogram counts", hist.at(q("-1/2")) == kExtremalShellSize * 1240,
           "-1/2: " + std::to_string(hist.at(q("-1/2"))));

    const auto m = moments(hist, shell.size(), 32, 10);
    bool vanish = m[8] != 0;
    for (int i = 1; i <= 7; ++i) vanish = vanish && m[i] == 0;
    record("moments M_1..M_7 vanish, M_8 does not", vanish);
    const auto ds = design_strength(hist, shell.size(), 32, kDefaultStrengthCap);
    const auto& ev = ds.extra_vanishing;
    record("design strength 7 with M_9, M_10 = 0",
           ds.tau == 7 && std::find(ev.begin(), ev.end(), 9) != ev.end() && std::find(ev.begin(), ev.end(), 10) != ev.end(),
           "tau " + std::to_string(ds.tau));

    const auto inv = check_distance_invariance(shell, opt.full_invariance ? Sampling::every_point() : Sampling::random(1000, 1),
                                               opt.pass);
    record("distance invariance",
           inv.invariant && inv.distribution == shell_distribution(),
           std::to_string(inv.points_checked) + " points");

    const auto h = potentials::invlin();
    auto cert = energy_lower_bound<Rational>(h);
    attach_code_energy(cert, hist, h);
    record("energy bound attained", cert.valid && *cert.gap == 0, "bound " + to_string(cert.lower_bound));
  });
  return out;
}

}  // namespace latcert
