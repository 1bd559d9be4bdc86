#pragma once

// Linear programming certificates: an upper bound on T-avoiding s-codes that
// are designs of a given strength, and a lower bound on T-avoiding designs.

#include "latcert/gegenbauer.hpp"
#include "latcert/interval.hpp"
#include "latcert/sign.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcert {

enum class BoundKind { max_code, min_design };

inline const char* to_string(BoundKind k) { return k == BoundKind::max_code ? "max_code" : "min_design"; }

struct BoundCertificate {
  BoundKind kind = BoundKind::max_code;
  FactoredPolynomial polynomial;
  int dimension = 0;
  IntervalRegion avoided;             // T
  IntervalRegion sign_region;         // where the sign condition was checked
  std::optional<Rational> s_max;      // max_code only
  std::optional<int> assumed_strength;  // max_code: design strength; min_design: tau
  GegExpansion expansion;
  SignReport sign_report;
  std::vector<int> offending_coefficients;  // indices whose sign breaks the certificate
  Rational value_at_one;
  Rational bound;  // f(1)/f_0
  bool valid = false;
  std::vector<std::string> reasons;  // why the certificate is invalid
};

class CertificateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline BoundCertificate start_certificate(BoundKind kind, const FactoredPolynomial& p, int n,
                                          const IntervalRegion& T) {
  BoundCertificate c;
  c.kind = kind;
  c.polynomial = p;
  c.dimension = n;
  c.avoided = T;
  c.expansion = gegenbauer_expand(n, p.expand());
  c.value_at_one = p(Rational(1));
  const Rational f0 = c.expansion.constant_term();
  if (f0 <= 0) throw CertificateError("f_0 = " + to_string(f0) + " is not positive; no bound can be derived");
  c.bound = c.value_at_one / f0;
  return c;
}

}  // namespace detail

/// |C| <= f(1)/f_0 for T-avoiding s-codes that are `strength`-designs, given
/// f <= 0 on [-1, s] \ T and f_i >= 0 for every i > strength.
inline BoundCertificate certify_max_code(const FactoredPolynomial& p, int n, const IntervalRegion& T,
                                         const Rational& s, int strength) {
  auto c = detail::start_certificate(BoundKind::max_code, p, n, T);
  c.s_max = s;
  c.assumed_strength = strength;
  c.sign_region = IntervalRegion::closed(Rational(-1), s).minus(T);
  c.sign_report = sign_on_region(p, c.sign_region);
  if (!c.sign_report.is_nonpositive()) {
    c.reasons.push_back("polynomial is positive somewhere on " + c.sign_region.str());
  }
  for (std::size_t i = static_cast<std::size_t>(std::max(strength, 0)) + 1; i < c.expansion.coeffs.size(); ++i) {
    if (c.expansion.coeffs[i] < 0) c.offending_coefficients.push_back(static_cast<int>(i));
  }
  for (int i : c.offending_coefficients) {
    c.reasons.push_back("f_" + std::to_string(i) + " = " + to_string(c.expansion.coeffs[static_cast<std::size_t>(i)]) +
                        " < 0 with assumed strength " + std::to_string(strength));
  }
  c.valid = c.reasons.empty();
  return c;
}

/// |C| >= f(1)/f_0 for T-avoiding tau-designs, given deg f <= tau and f >= 0 on [-1, 1] \ T.
inline BoundCertificate certify_min_design(const FactoredPolynomial& p, int n, const IntervalRegion& T, int tau) {
  if (p.degree() > tau) {
    throw CertificateError("degree " + std::to_string(p.degree()) + " exceeds the design strength " +
                           std::to_string(tau));
  }
  auto c = detail::start_certificate(BoundKind::min_design, p, n, T);
  c.assumed_strength = tau;
  c.sign_region = IntervalRegion::closed(Rational(-1), Rational(1)).minus(T);
  c.sign_report = sign_on_region(p, c.sign_region);
  if (!c.sign_report.is_nonnegative()) {
    c.reasons.push_back("polynomial is negative somewhere on " + c.sign_region.str());
  }
  c.valid = c.reasons.empty();
  return c;
}

struct BuiltinPolynomial {
  std::string name;
  FactoredPolynomial polynomial;
  GegExpansion expected;  // published expansion in dimension 32
};

inline FactoredPolynomial factored(std::initializer_list<std::pair<const char*, unsigned>> roots) {
  std::vector<RootFactor> f;
  for (const auto& [r, m] : roots) f.push_back({parse_rational(r), m});
  return FactoredPolynomial(Rational(1), std::move(f));
}

inline GegExpansion expansion32(std::initializer_list<const char*> coeffs) {
  GegExpansion e{32, {}};
  for (const char* c : coeffs) e.coeffs.push_back(parse_rational(c));
  return e;
}

/// The maximal-code polynomial, the tight-design polynomial and the last partial
/// product of the energy argument, with their dimension-32 expansions.
inline std::vector<BuiltinPolynomial> builtin_polynomials() {
  return {
      {"maxcode10",
       factored({{"-1", 1}, {"-1/2", 2}, {"-1/4", 2}, {"0", 1}, {"1/4", 1}, {"1/2", 3}}),
       expansion32({"5/1114112", "65/992256", "-31/196608", "-93/165376", "217/417792", "899/58368",
                    "2387/188416", "20119/894976", "0", "3441/11776", "14911/47104"})},
      {"design7",
       factored({{"0", 1}, {"-1", 1}, {"-1/2", 2}, {"-1/4", 1}, {"1/4", 1}, {"1/2", 1}}),
       // Only f_0 is published for this polynomial.
       GegExpansion{32, {parse_rational("1/69632")}}},
      {"p7",
       factored({{"-1", 2}, {"-1/2", 1}, {"-1/4", 1}, {"0", 2}, {"1/4", 1}}),
       expansion32({"97/104448", "619/41344", "12245/116736", "2139/5168", "13981/13056", "4433/2432",
                    "11935/7296", "341/608"})},
  };
}

inline std::optional<BuiltinPolynomial> find_builtin(const std::string& name) {
  for (auto& b : builtin_polynomials()) {
    if (b.name == name) return b;
  }
  return std::nullopt;
}

}  // namespace latcert
