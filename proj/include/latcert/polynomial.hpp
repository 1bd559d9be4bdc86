#pragma once

#include "latcert/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace latcert {

/// Dense univariate polynomial; coefficient k multiplies t^k.
/// The coefficient list never ends in a zero, so the zero polynomial is empty.
template <class S>
class BasicPolynomial {
 public:
  using scalar_type = S;

  BasicPolynomial() = default;
  explicit BasicPolynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }
  BasicPolynomial(std::initializer_list<S> coeffs) : c_(coeffs) { trim(); }

  static BasicPolynomial constant(const S& c) { return BasicPolynomial(std::vector<S>{c}); }
  static BasicPolynomial monomial(std::size_t k, const S& c = S(1)) {
    std::vector<S> v(k + 1, S(0));
    v[k] = c;
    return BasicPolynomial(std::move(v));
  }
  /// t - root
  static BasicPolynomial linear(const S& root) { return BasicPolynomial({S(-root), S(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<S>& coefficients() const { return c_; }
  S coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : S(0); }
  S leading() const { return c_.empty() ? S(0) : c_.back(); }

  S operator()(const S& t) const {
    S acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= t;
      acc += *it;
    }
    return acc;
  }

  BasicPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<S> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * S(static_cast<long>(k));
    return BasicPolynomial(std::move(d));
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  BasicPolynomial& operator*=(const S& s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  friend BasicPolynomial operator*(BasicPolynomial a, const S& s) { return a *= s; }
  friend BasicPolynomial operator*(const S& s, BasicPolynomial a) { return a *= s; }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> r(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return BasicPolynomial(std::move(r));
  }
  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<S> c_;
};

using Polynomial = BasicPolynomial<Rational>;

template <class S>
BasicPolynomial<S> convert_polynomial(const Polynomial& p) {
  std::vector<S> c;
  c.reserve(p.coefficients().size());
  for (const auto& q : p.coefficients()) c.push_back(scalar_from<S>(q));
  return BasicPolynomial<S>(std::move(c));
}

inline Rational poly_eval(const Polynomial& p, const Rational& t) { return p(t); }

struct RootFactor {
  Rational root;
  unsigned multiplicity = 1;
};

/// leading * prod (t - root)^multiplicity, roots pairwise distinct.
class FactoredPolynomial {
 public:
  FactoredPolynomial() = default;
  FactoredPolynomial(Rational leading, std::vector<RootFactor> factors)
      : leading_(std::move(leading)), factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].multiplicity == 0) throw std::invalid_argument("root multiplicity must be positive");
      for (std::size_t j = 0; j < i; ++j) {
        if (factors_[i].root == factors_[j].root) {
          throw std::invalid_argument("repeated root " + to_string(factors_[i].root) +
                                      "; merge multiplicities instead");
        }
      }
    }
  }

  const Rational& leading() const { return leading_; }
  const std::vector<RootFactor>& factors() const { return factors_; }

  int degree() const {
    if (leading_ == 0) return -1;
    int d = 0;
    for (const auto& f : factors_) d += static_cast<int>(f.multiplicity);
    return d;
  }

  /// Product of the factors evaluated one at a time (independent of expand()).
  Rational operator()(const Rational& t) const {
    Rational v = leading_;
    for (const auto& f : factors_) {
      const Rational d = t - f.root;
      for (unsigned m = 0; m < f.multiplicity; ++m) v *= d;
    }
    return v;
  }

  Polynomial expand() const {
    Polynomial p = Polynomial::constant(leading_);
    for (const auto& f : factors_) {
      const Polynomial lin = Polynomial::linear(f.root);
      for (unsigned m = 0; m < f.multiplicity; ++m) p = p * lin;
    }
    return p;
  }

  /// Sorted roots (ascending).
  std::vector<Rational> roots() const {
    std::vector<Rational> r;
    for (const auto& f : factors_) r.push_back(f.root);
    std::sort(r.begin(), r.end());
    return r;
  }

 private:
  Rational leading_ = 1;
  std::vector<RootFactor> factors_;
};

inline Polynomial expand_factored(const FactoredPolynomial& fp) { return fp.expand(); }

/// Builds leading * prod (t - r) over a node list that may repeat values.
inline FactoredPolynomial factored_from_nodes(const std::vector<Rational>& nodes, Rational leading = 1) {
  std::vector<RootFactor> f;
  for (const auto& r : nodes) {
    auto it = std::find_if(f.begin(), f.end(), [&](const RootFactor& x) { return x.root == r; });
    if (it == f.end()) {
      f.push_back({r, 1});
    } else {
      ++it->multiplicity;
    }
  }
  return FactoredPolynomial(std::move(leading), std::move(f));
}

class FactorizationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::vector<mpz_class> positive_divisors(mpz_class a) {
  a = abs(a);
  if (a > mpz_class("1000000000000")) throw FactorizationError("coefficient too large for rational root search");
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      small.push_back(d);
      if (d * d != a) large.push_back(a / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Divides p by (t - r); the caller guarantees p(r) == 0.
inline Polynomial deflate(const Polynomial& p, const Rational& r) {
  const auto& c = p.coefficients();
  std::vector<Rational> q(c.size() - 1);
  Rational carry = 0;
  for (std::size_t k = c.size() - 1; k > 0; --k) {
    carry = c[k] + carry * r;
    q[k - 1] = carry;
  }
  return Polynomial(std::move(q));
}

}  // namespace detail

/// Splits p into linear factors over Q; throws if an irreducible factor of degree > 1 remains.
inline FactoredPolynomial factor_over_rationals(const Polynomial& p) {
  if (p.degree() < 0) throw FactorizationError("the zero polynomial has no factorization");
  std::vector<Rational> roots;
  Polynomial rest = p;
  while (rest.degree() > 0 && rest.coefficient(0) == 0) {
    roots.push_back(0);
    rest = detail::deflate(rest, 0);
  }
  if (rest.degree() > 0) {
    mpz_class lcm = 1;
    for (const auto& c : rest.coefficients()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    const mpz_class a0 = Rational(rest.coefficient(0) * lcm).get_num();
    const mpz_class an = Rational(rest.leading() * lcm).get_num();
    for (const auto& num : detail::positive_divisors(a0)) {
      for (const auto& den : detail::positive_divisors(an)) {
        for (int sign : {1, -1}) {
          Rational r(num * sign, den);
          r.canonicalize();
          while (rest.degree() > 0 && rest(r) == 0) {
            roots.push_back(r);
            rest = detail::deflate(rest, r);
          }
        }
      }
    }
  }
  if (rest.degree() > 0) {
    throw FactorizationError("polynomial does not split into linear factors over the rationals");
  }
  return factored_from_nodes(roots, rest.leading());
}

}  // namespace latcert
