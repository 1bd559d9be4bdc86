#include "latcert/regression.hpp"
#include "latcert/sphercode.hpp"
#include "latcert/verification.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace latcert;

namespace {

Rational q(const char* s) { return parse_rational(s); }

const Shell& rm_shell() {
  static const Shell s = build_shell(reed_muller_2_5(), "rm2_5");
  return s;
}

const InnerProductHistogram& rm_histogram() {
  static const InnerProductHistogram h = histogram(rm_shell());
  return h;
}

// Plain scalar loop over one row.
DistanceDistribution scalar_distribution(const Shell& shell, std::size_t x) {
  std::map<int, long> counts;
  for (const auto& y : shell.vectors()) ++counts[dot(shell[x], y)];
  DistanceDistribution d;
  for (const auto& [v, c] : counts) {
    Rational t(v, kShellNorm);
    t.canonicalize();
    d.a[t] = c;
  }
  return d;
}

SphericalCode small_code(std::vector<std::vector<int>> pts) {
  const int n = static_cast<int>(pts.front().size());
  return SphericalCode::from_points(n, pts);
}

}  // namespace

TEST_CASE("two-point antipodal code") {
  const auto c = small_code({{1, 0, 0}, {-1, 0, 0}});
  const auto h = histogram(c);
  CHECK(h.counts == std::map<Rational, std::uint64_t>{{Rational(-1), 2}});
  const auto ds = design_strength(h, c.size(), 3, 4);
  CHECK(ds.tau == 1);
  const auto m = moments(h, c.size(), 3, 2);
  CHECK(m[2] == 4);
}

TEST_CASE("three-point code is not distance invariant") {
  const auto c = small_code({{1, 0}, {0, 1}, {-1, 0}});
  const auto r = check_distance_invariance(c, Sampling::every_point());
  CHECK_FALSE(r.invariant);
  REQUIRE(r.counterexample);
  CHECK(distribution_of_row(c, r.counterexample->first) != distribution_of_row(c, r.counterexample->second));
}

TEST_CASE("orbit of a point under negation is distance invariant") {
  const auto c = small_code({{3, 4}, {-3, -4}});
  CHECK(check_distance_invariance(c, Sampling::every_point()).invariant);
}

TEST_CASE("codes need one common norm") {
  CHECK_THROWS(small_code({{1, 0}, {1, 1}}));
  CHECK_THROWS(small_code({{0, 0}}));
}

TEST_CASE("histogram of the Reed-Muller shell") {
  const auto& h = rm_histogram();
  const auto N = static_cast<std::uint64_t>(kExtremalShellSize);
  CHECK(h.support() == shell_inner_products());
  CHECK(h.total() == N * (N - 1));
  const auto d = shell_distribution();
  for (const auto& t : shell_inner_products()) CHECK(Rational(static_cast<unsigned long>(h.at(t))) == d.at(t) * N);
  CHECK(h.at(q("-1/2")) == N * 1240);
  CHECK(h.at(q("1/4")) == h.at(q("-1/4")));
  CHECK(h.at(q("1/2")) == h.at(q("-1/2")));
  CHECK(h.at(-1) == N);
}

TEST_CASE("histogram is independent of the thread count") {
  const auto c = SphericalCode::from_shell(rm_shell());
  std::vector<std::vector<int>> pts;
  for (std::size_t i = 0; i < 3000; ++i) {
    const auto& v = rm_shell()[i * 41 % rm_shell().size()];
    pts.emplace_back(v.begin(), v.end());
  }
  const auto sub = SphericalCode::from_points(32, pts);
  PassOptions one, four;
  one.threads = 1;
  four.threads = 4;
  CHECK(histogram(sub, one).counts == histogram(sub, four).counts);
}

TEST_CASE("per-point distributions match a scalar recount") {
  std::mt19937_64 rng(9);
  const auto code = SphericalCode::from_shell(rm_shell());
  for (int k = 0; k < 25; ++k) {
    const std::size_t x = rng() % rm_shell().size();
    const auto d = distance_distribution_at(rm_shell(), rm_shell()[x]);
    CHECK(d == scalar_distribution(rm_shell(), x));
    CHECK(d == shell_distribution());
    CHECK(d.at(1) == 1);
    CHECK(d.total() == static_cast<long>(kExtremalShellSize));
    CHECK(distribution_of_row(code, x) == d);
  }
  ShellVector outside{};
  outside[0] = 8;
  CHECK_THROWS_AS(distance_distribution_at(rm_shell(), outside), PointNotInCode);
}

TEST_CASE("sampled distance invariance on both shells") {
  CHECK(check_distance_invariance(rm_shell(), Sampling::random(200, 3)).distribution == shell_distribution());
  const Shell qr = build_shell(extended_quadratic_residue_32());
  const auto r = check_distance_invariance(qr, Sampling::random(200, 3));
  CHECK(r.invariant);
  CHECK(r.points_checked == 200);
  CHECK(r.distribution == shell_distribution());
  CHECK(sample_indices(qr.size(), Sampling::random(50, 8)) == sample_indices(qr.size(), Sampling::random(50, 8)));
}

TEST_CASE("moments and design strength of the shell") {
  const auto m = moments(rm_histogram(), kExtremalShellSize, 32, 12);
  for (int i = 1; i <= 7; ++i) CHECK(m[i] == 0);
  CHECK(m[8] != 0);
  CHECK(m[9] == 0);
  CHECK(m[10] == 0);
  for (int i = 1; i <= 12; ++i) CHECK(m[i] >= 0);
  const auto ds = design_strength(m);
  CHECK(ds.tau == 7);
  CHECK(std::find(ds.extra_vanishing.begin(), ds.extra_vanishing.end(), 9) != ds.extra_vanishing.end());
  CHECK(std::find(ds.extra_vanishing.begin(), ds.extra_vanishing.end(), 10) != ds.extra_vanishing.end());

  // M_2 directly from the distribution and P_2 = (32t^2 - 1)/31.
  Rational m2 = 0;
  for (const auto& [t, a] : shell_distribution().a) m2 += a * (32 * t * t - 1) / 31;
  CHECK(m2 * kExtremalShellSize == 0);
}

TEST_CASE("quadrature on the shell distribution") {
  const auto d = shell_distribution();
  const auto t2 = quadrature_check(d, Polynomial::monomial(2), 32, kExtremalShellSize, 7);
  CHECK(t2.holds);
  CHECK(t2.lhs == 4590);
  CHECK(t2.rhs == 4590);
  CHECK(quadrature_check(d, Polynomial::constant(1), 32, kExtremalShellSize, 7).rhs == kExtremalShellSize);

  std::mt19937_64 rng(21);
  for (int k = 0; k < 100; ++k) {
    const auto v = quadrature_check(d, random_rational_polynomial(rng, 7), 32, kExtremalShellSize, 7);
    CHECK(v.holds);
    CHECK_FALSE(v.beyond_strength);
  }
  const auto t8 = quadrature_check(d, Polynomial::monomial(8), 32, kExtremalShellSize, 7);
  CHECK(t8.beyond_strength);
  CHECK_FALSE(t8.holds);
}

TEST_CASE("distribution from the design equations") {
  CHECK(distribution_from_design(shell_inner_products(), kExtremalShellSize, 32, 7) == shell_distribution());
  CHECK(distribution_from_design(shell_inner_products(), kExtremalShellSize, 32, 7) ==
        distance_distribution_at(rm_shell(), rm_shell()[12345]));
  const auto two = distribution_from_design({Rational(-1)}, 2, 32, 1);
  CHECK(two.at(-1) == 1);
  CHECK(two.at(1) == 1);
  CHECK_THROWS_AS(distribution_from_design({q("1/2"), q("1/2")}, 10, 32, 7), DistributionError);
  CHECK_THROWS_AS(distribution_from_design(shell_inner_products(), 146881, 32, 7), DistributionError);
}

TEST_CASE("main identity on the shell") {
  std::mt19937_64 rng(33);
  const auto N = Rational(static_cast<unsigned long>(kExtremalShellSize));
  const auto m = moments(rm_histogram(), kExtremalShellSize, 32, 10);
  for (int k = 0; k < 50; ++k) {
    const Polynomial f = random_rational_polynomial(rng, 10);
    Rational lhs = f(1) * N;
    for (const auto& [t, c] : rm_histogram().counts) lhs += f(t) * Rational(static_cast<unsigned long>(c));
    const auto e = gegenbauer_expand(32, f);
    Rational rhs = e.constant_term() * N * N;
    for (int i = 1; i <= e.degree(); ++i) rhs += e.coefficient(static_cast<std::size_t>(i)) * m[i];
    CHECK(lhs == rhs);
  }
}

TEST_CASE("verification report on a sample") {
  PassOptions opt;
  std::size_t calls = 0;
  opt.progress = [&](std::size_t, std::size_t) { ++calls; };
  const auto r = verify_shell(rm_shell(), Sampling::random(100, 1), opt, 10);
  CHECK(r.valid);
  CHECK(r.count == kExtremalShellSize);
  CHECK(r.strength.tau == 7);
  CHECK(r.moments[10] == 0);
  CHECK(r.histogram.counts == rm_histogram().counts);
  CHECK(calls > 0);
}
