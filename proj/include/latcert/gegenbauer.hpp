#pragma once

// Gegenbauer polynomials P_i^(n) normalized by P_i^(n)(1) = 1, and exact
// conversion between the monomial and Gegenbauer bases.

#include "latcert/polynomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcert {

inline constexpr int kDefaultMaxGegenbauerDegree = 64;

class InvalidDimension : public std::invalid_argument {
 public:
  explicit InvalidDimension(int n) : std::invalid_argument("dimension must be >= 2, got " + std::to_string(n)) {}
};

namespace detail {

// (i+n-2) P_{i+1} = (2i+n-2) t P_i - i P_{i-1}
inline std::vector<Polynomial> gegenbauer_table(int n, int upto) {
  std::vector<Polynomial> p;
  p.push_back(Polynomial::constant(1));
  if (upto >= 1) p.push_back(Polynomial::monomial(1));
  const Polynomial t = Polynomial::monomial(1);
  for (int i = 1; i < upto; ++i) {
    Polynomial next = (t * p[i]) * Rational(2 * i + n - 2) - p[i - 1] * Rational(i);
    next *= Rational(1, i + n - 2);
    p.push_back(std::move(next));
  }
  return p;
}

// Per-dimension cache. Readers share immutable tables; growth replaces the table.
class GegenbauerCache {
 public:
  static GegenbauerCache& instance() {
    static GegenbauerCache cache;
    return cache;
  }

  std::shared_ptr<const std::vector<Polynomial>> table(int n, int degree) {
    std::lock_guard lock(mu_);
    auto& slot = tables_[n];
    if (!slot || static_cast<int>(slot->size()) <= degree) {
      slot = std::make_shared<const std::vector<Polynomial>>(gegenbauer_table(n, degree));
    }
    return slot;
  }

 private:
  std::mutex mu_;
  std::map<int, std::shared_ptr<const std::vector<Polynomial>>> tables_;
};

}  // namespace detail

inline Polynomial gegenbauer_poly(int n, int i) {
  if (n < 2) throw InvalidDimension(n);
  if (i < 0) throw std::invalid_argument("Gegenbauer index must be nonnegative");
  return (*detail::GegenbauerCache::instance().table(n, i))[static_cast<std::size_t>(i)];
}

/// f = sum_i coeffs[i] * P_i^(n)
template <class S>
struct BasicGegExpansion {
  int dimension = 0;
  std::vector<S> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  S coefficient(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : S(0); }
  S constant_term() const { return coefficient(0); }
};

using GegExpansion = BasicGegExpansion<Rational>;

/// Triangular solve from the top degree down against the basis table.
template <class S>
BasicGegExpansion<S> gegenbauer_expand(int n, const BasicPolynomial<S>& p,
                                       int max_degree = kDefaultMaxGegenbauerDegree) {
  if (n < 2) throw InvalidDimension(n);
  BasicGegExpansion<S> out{n, {}};
  if (p.is_zero()) {
    out.coeffs.push_back(S(0));
    return out;
  }
  const int d = p.degree();
  if (d > max_degree) {
    throw std::domain_error("degree " + std::to_string(d) + " exceeds the Gegenbauer degree cap " +
                            std::to_string(max_degree));
  }
  const auto table = detail::GegenbauerCache::instance().table(n, d);

  out.coeffs.assign(static_cast<std::size_t>(d) + 1, S(0));
  BasicPolynomial<S> rest = p;
  for (int i = d; i >= 0; --i) {
    const auto basis = convert_polynomial<S>((*table)[static_cast<std::size_t>(i)]);
    const S c = rest.coefficient(static_cast<std::size_t>(i)) / basis.leading();
    out.coeffs[static_cast<std::size_t>(i)] = c;
    if (c != 0) rest -= basis * c;
  }
  return out;
}

template <class S>
BasicPolynomial<S> reconstruct(const BasicGegExpansion<S>& e) {
  BasicPolynomial<S> p;
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
    if (e.coeffs[i] != 0) p += convert_polynomial<S>(gegenbauer_poly(e.dimension, static_cast<int>(i))) * e.coeffs[i];
  }
  return p;
}

struct DefinitenessVerdict {
  bool positive_definite = true;
  std::vector<int> negative_indices;
};

/// Nonnegative Gegenbauer coefficients; index 0 is included.
template <class S>
DefinitenessVerdict is_positive_definite(const BasicGegExpansion<S>& e) {
  DefinitenessVerdict v;
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
    if (e.coeffs[i] < 0) v.negative_indices.push_back(static_cast<int>(i));
  }
  v.positive_definite = v.negative_indices.empty();
  return v;
}

}  // namespace latcert
