#pragma once

// Scalar types shared by every module: GMP rationals for exact work and
// MPFR floats for transcendental potentials.

#include <gmpxx.h>
#include <mpfr.h>

#include <boost/multiprecision/mpfr.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace latcert {

using Rational = mpq_class;
using Real = boost::multiprecision::mpfr_float;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", "p" or "-p/q". The result is canonical (lowest terms, q > 0).
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) throw ParseError("empty rational literal");

  const auto slash = s.find('/');
  auto digits_ok = [](std::string_view part, bool allow_sign) {
    if (allow_sign && !part.empty() && part.front() == '-') part.remove_prefix(1);
    if (part.empty()) return false;
    for (char c : part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  const std::string_view view(s);
  if (slash == std::string::npos) {
    if (!digits_ok(view, true)) throw ParseError("malformed rational: " + s);
  } else {
    if (!digits_ok(view.substr(0, slash), true) || !digits_ok(view.substr(slash + 1), false)) {
      throw ParseError("malformed rational: " + s);
    }
    const mpz_class den(std::string(view.substr(slash + 1)));
    if (den == 0) throw ParseError("zero denominator: " + s);
  }
  Rational q(s, 10);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

template <class S>
inline S scalar_from(const Rational& q) {
  if constexpr (std::is_same_v<S, Rational>) {
    return q;
  } else {
    return to_real(q);
  }
}

inline std::string to_string(const Real& r, int digits) {
  return r.str(digits, std::ios_base::scientific);
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

/// Sets the default MPFR precision (decimal digits) for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline constexpr unsigned kDefaultPrecisionDigits = 60;

}  // namespace latcert
