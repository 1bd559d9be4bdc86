#pragma once

// Interaction potentials h(t) on [-1, 1). Every potential evaluates in MPFR
// precision; rational ones also evaluate exactly on rationals.

#include "latcert/polynomial.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcert {

struct Potential {
  std::string name;
  std::function<Real(const Real&)> value;
  std::function<Real(const Real&)> derivative;
  std::function<Rational(const Rational&)> exact_value;       // empty unless rational on rationals
  std::function<Rational(const Rational&)> exact_derivative;  // likewise
  std::optional<Rational> pole;  // h is infinite here
  bool claimed_absolutely_monotone = true;

  bool exact_on_rationals() const { return static_cast<bool>(exact_value) && static_cast<bool>(exact_derivative); }

  template <class S>
  S at(const S& t) const {
    if constexpr (std::is_same_v<S, Rational>) {
      require_exact();
      return exact_value(t);
    } else {
      return value(t);
    }
  }
  template <class S>
  S slope(const S& t) const {
    if constexpr (std::is_same_v<S, Rational>) {
      require_exact();
      return exact_derivative(t);
    } else {
      return derivative(t);
    }
  }
  bool singular_at(const Rational& t) const { return pole && *pole == t; }

 private:
  void require_exact() const {
    if (!exact_on_rationals()) throw std::logic_error("potential '" + name + "' has no exact rational evaluator");
  }
};

class PotentialError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace potentials {

/// h(t) = 1/(2-2t): the inverse-distance-squared kernel, rational on rationals.
inline Potential invlin() {
  Potential h;
  h.name = "invlin";
  h.value = [](const Real& t) -> Real { return Real(1) / (2 - 2 * t); };
  h.derivative = [](const Real& t) -> Real {
    const Real d = 2 - 2 * t;
    return Real(2) / (d * d);
  };
  h.exact_value = [](const Rational& t) -> Rational { return Rational(1) / (2 - 2 * t); };
  h.exact_derivative = [](const Rational& t) -> Rational {
    const Rational d = 2 - 2 * t;
    return Rational(2) / (d * d);
  };
  h.pole = Rational(1);
  return h;
}

/// h(t) = (2-2t)^(-s/2), the Riesz s-energy in terms of the inner product.
inline Potential riesz(const Rational& s) {
  if (s <= 0) throw PotentialError("Riesz exponent must be positive");
  Potential h;
  h.name = "riesz:" + to_string(s);
  const Real half = to_real(s) / 2;
  h.value = [half](const Real& t) -> Real { return pow(2 - 2 * t, -half); };
  h.derivative = [half](const Real& t) -> Real { return 2 * half * pow(2 - 2 * t, -half - 1); };
  const Rational k = s / 2;
  if (is_integral(k)) {
    const unsigned long e = k.get_num().get_ui();
    auto power = [](const Rational& base, unsigned long n) -> Rational {
      Rational r = 1;
      for (unsigned long i = 0; i < n; ++i) r *= base;
      return r;
    };
    h.exact_value = [e, power](const Rational& t) -> Rational { return Rational(1) / power(2 - 2 * t, e); };
    h.exact_derivative = [e, power](const Rational& t) -> Rational {
      return Rational(2 * static_cast<long>(e)) / power(2 - 2 * t, e + 1);
    };
  }
  h.pole = Rational(1);
  return h;
}

/// h(t) = e^t.
inline Potential expt() {
  Potential h;
  h.name = "expt";
  h.value = [](const Real& t) -> Real { return exp(t); };
  h.derivative = [](const Real& t) -> Real { return exp(t); };
  return h;
}

/// h(t) = exp(-alpha (2-2t)), the Gaussian kernel in the squared distance.
inline Potential gauss(const Rational& alpha) {
  if (alpha <= 0) throw PotentialError("Gaussian parameter must be positive");
  Potential h;
  h.name = "gauss:" + to_string(alpha);
  const Real a = to_real(alpha);
  h.value = [a](const Real& t) -> Real { return exp(-a * (2 - 2 * t)); };
  h.derivative = [a](const Real& t) -> Real { return 2 * a * exp(-a * (2 - 2 * t)); };
  return h;
}

/// Polynomial potential; absolutely monotone iff all derivatives are nonnegative on
/// [-1,1], which is recorded as claimed only when every coefficient is nonnegative.
inline Potential polynomial(const Polynomial& p, std::string name = "poly") {
  Potential h;
  h.name = std::move(name);
  const auto pr = convert_polynomial<Real>(p);
  const auto dr = pr.derivative();
  const auto dp = p.derivative();
  h.value = [pr](const Real& t) -> Real { return pr(t); };
  h.derivative = [dr](const Real& t) -> Real { return dr(t); };
  h.exact_value = [p](const Rational& t) -> Rational { return p(t); };
  h.exact_derivative = [dp](const Rational& t) -> Rational { return dp(t); };
  h.claimed_absolutely_monotone = true;
  for (std::size_t k = 1; k < p.coefficients().size(); ++k) {
    if (p.coefficients()[k] < 0) h.claimed_absolutely_monotone = false;
  }
  return h;
}

inline Potential constant(const Rational& c) {
  return polynomial(Polynomial::constant(c), "const:" + to_string(c));
}

}  // namespace potentials

/// "invlin", "expt", "riesz:<s>", "gauss:<alpha>", "const:<c>" or "poly:<c0>,<c1>,...".
inline Potential parse_potential(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto need_arg = [&]() {
    if (arg.empty()) throw PotentialError("potential '" + head + "' needs a parameter, e.g. " + head + ":2");
    return parse_rational(arg);
  };
  if (head == "invlin") return potentials::invlin();
  if (head == "expt") return potentials::expt();
  if (head == "riesz") return potentials::riesz(need_arg());
  if (head == "gauss") return potentials::gauss(need_arg());
  if (head == "const") return potentials::constant(need_arg());
  if (head == "poly") {
    std::vector<Rational> c;
    std::size_t pos = 0;
    while (pos <= arg.size()) {
      const auto comma = arg.find(',', pos);
      c.push_back(parse_rational(arg.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return potentials::polynomial(Polynomial(std::move(c)), spec);
  }
  throw PotentialError("unknown potential '" + spec + "'");
}

/// Central-difference check of h' against h at the given points, in the current precision.
inline bool derivative_consistent(const Potential& h, const std::vector<Rational>& points, const Real& relative_tol) {
  const Real step = pow(Real(10), -static_cast<int>(Real::default_precision()) / 3);
  for (const auto& q : points) {
    const Real t = to_real(q);
    const Real fd = (h.value(t + step) - h.value(t - step)) / (2 * step);
    const Real d = h.derivative(t);
    if (abs(fd - d) > relative_tol * std::max(Real(1), Real(abs(d)))) return false;
  }
  return true;
}

}  // namespace latcert
