#include "latcert/gegenbauer.hpp"
#include "latcert/lpcert.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <thread>

using namespace latcert;

namespace {
Rational q(const char* s) { return parse_rational(s); }

// Normalized sphere moments: E[t^k] under the weight (1-t^2)^((n-3)/2).
Rational sphere_moment(int n, int k) {
  if (k % 2) return 0;
  Rational m = 1;
  for (int j = 1; j <= k / 2; ++j) {
    Rational f(2 * j - 1, 2 * j + n - 2);
    f.canonicalize();
    m *= f;
  }
  return m;
}

// Independent f_0: the normalized integral of p against the sphere measure.
Rational mean_on_sphere(int n, const Polynomial& p) {
  Rational s = 0;
  for (std::size_t k = 0; k < p.coefficients().size(); ++k) s += p.coefficients()[k] * sphere_moment(n, static_cast<int>(k));
  return s;
}

Polynomial random_poly(std::mt19937_64& rng, int deg) {
  std::vector<Rational> c;
  for (int k = 0; k <= deg; ++k) {
    Rational r(static_cast<long>(rng() % 61) - 30, static_cast<long>(rng() % 7) + 1);
    r.canonicalize();
    c.push_back(r);
  }
  return Polynomial(std::move(c));
}
}  // namespace

TEST_CASE("low-degree basis polynomials") {
  CHECK(gegenbauer_poly(32, 0) == Polynomial::constant(1));
  CHECK(gegenbauer_poly(32, 1) == Polynomial({q("0"), q("1")}));
  CHECK(gegenbauer_poly(32, 2) == Polynomial({q("-1/31"), q("0"), q("32/31")}));
  CHECK(gegenbauer_poly(3, 2) == Polynomial({q("-1/2"), q("0"), q("3/2")}));  // Legendre
  for (int i = 0; i <= 12; ++i) CHECK(gegenbauer_poly(32, i)(1) == 1);
  CHECK_THROWS_AS(gegenbauer_poly(1, 2), InvalidDimension);
}

TEST_CASE("basis is orthogonal for the sphere weight") {
  for (int n : {3, 5, 32}) {
    for (int i = 0; i <= 4; ++i) {
      for (int j = 0; j <= 4; ++j) {
        const Rational ip = mean_on_sphere(n, gegenbauer_poly(n, i) * gegenbauer_poly(n, j));
        if (i != j) {
          CHECK(ip == 0);
        } else {
          CHECK(ip > 0);
        }
      }
    }
  }
}

TEST_CASE("published expansions in dimension 32") {
  const auto fmax = gegenbauer_expand(32, find_builtin("maxcode10")->polynomial.expand());
  CHECK(fmax.coeffs == find_builtin("maxcode10")->expected.coeffs);
  CHECK(fmax.coefficient(8) == 0);
  CHECK(is_positive_definite(fmax).negative_indices == std::vector<int>{2, 3});

  const auto p7 = gegenbauer_expand(32, find_builtin("p7")->polynomial.expand());
  CHECK(p7.coeffs == find_builtin("p7")->expected.coeffs);
  CHECK(is_positive_definite(p7).positive_definite);

  CHECK(gegenbauer_expand(32, find_builtin("design7")->polynomial.expand()).constant_term() == q("1/69632"));
  CHECK(gegenbauer_expand(32, Polynomial::constant(1)).coeffs == std::vector<Rational>{1});
  CHECK(is_positive_definite(gegenbauer_expand(32, Polynomial({q("1/2"), q("1")}))).positive_definite);
}

TEST_CASE("f_0 matches the sphere mean") {
  CHECK(gegenbauer_expand(32, Polynomial::monomial(2)).constant_term() == q("1/32"));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const Polynomial p = random_poly(rng, static_cast<int>(rng() % 13));
    CHECK(gegenbauer_expand(n, p).constant_term() == mean_on_sphere(n, p));
  }
}

TEST_CASE("expansion round-trips and sums to p(1)") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = trial % 2 ? 32 : 2 + static_cast<int>(rng() % 30);
    const Polynomial p = random_poly(rng, static_cast<int>(rng() % 13));
    const auto e = gegenbauer_expand(n, p);
    CHECK(reconstruct(e) == p);
    Rational sum = 0;
    for (const auto& c : e.coeffs) sum += c;
    CHECK(sum == p(1));
  }
}

TEST_CASE("products of basis polynomials stay positive definite") {
  for (int i = 0; i <= 5; ++i) {
    for (int j = 0; j <= 5; ++j) {
      CHECK(is_positive_definite(gegenbauer_expand(32, gegenbauer_poly(32, i) * gegenbauer_poly(32, j))).positive_definite);
    }
  }
}

TEST_CASE("expansion works in real arithmetic and respects the degree cap") {
  PrecisionScope ps(50);
  const auto pr = convert_polynomial<Real>(find_builtin("p7")->polynomial.expand());
  const auto er = gegenbauer_expand(32, pr);
  const auto ex = find_builtin("p7")->expected;
  for (std::size_t i = 0; i < ex.coeffs.size(); ++i) {
    CHECK(abs(er.coeffs[i] - to_real(ex.coeffs[i])) < Real("1e-40"));
  }
  CHECK_THROWS_AS(gegenbauer_expand(32, Polynomial::monomial(65)), std::domain_error);
  CHECK_NOTHROW(gegenbauer_expand(32, Polynomial::monomial(20), 20));
}

TEST_CASE("basis cache is safe under concurrent readers") {
  std::vector<std::jthread> pool;
  std::vector<Polynomial> got(8);
  for (int k = 0; k < 8; ++k) {
    pool.emplace_back([k, &got] { got[static_cast<std::size_t>(k)] = gegenbauer_poly(17 + k % 2, 10 + k); });
  }
  pool.clear();
  for (int k = 0; k < 8; ++k) CHECK(got[static_cast<std::size_t>(k)](1) == 1);
}
