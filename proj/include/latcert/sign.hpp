#pragma once

// Exact sign analysis of a factored polynomial over a union of intervals.
// Between consecutive roots a product of linear factors has constant sign, so
// testing every root, every closed endpoint and one midpoint per gap decides it.

#include "latcert/interval.hpp"
#include "latcert/polynomial.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace latcert {

enum class Sign { zero, nonnegative, nonpositive, mixed };

inline const char* to_string(Sign s) {
  switch (s) {
    case Sign::zero: return "zero";
    case Sign::nonnegative: return "nonnegative";
    case Sign::nonpositive: return "nonpositive";
    case Sign::mixed: return "mixed";
  }
  return "?";
}

struct SignSample {
  Rational t;
  Rational value;
};

struct SignReport {
  Sign verdict = Sign::zero;
  std::vector<SignSample> samples;  // every point evaluated, ascending

  bool is_nonnegative() const { return verdict == Sign::zero || verdict == Sign::nonnegative; }
  bool is_nonpositive() const { return verdict == Sign::zero || verdict == Sign::nonpositive; }

  std::vector<SignSample> positive_points() const { return filter(1); }
  std::vector<SignSample> negative_points() const { return filter(-1); }

 private:
  std::vector<SignSample> filter(int sgn_wanted) const {
    std::vector<SignSample> out;
    for (const auto& s : samples) {
      if (sgn(s.value) == sgn_wanted) out.push_back(s);
    }
    return out;
  }
};

class VacuousRegion : public std::invalid_argument {
 public:
  VacuousRegion() : std::invalid_argument("sign condition over an empty region is vacuous") {}
};

inline SignReport sign_on_region(const FactoredPolynomial& fp, const IntervalRegion& region) {
  if (region.empty()) throw VacuousRegion();
  const auto roots = fp.roots();

  SignReport report;
  for (const auto& iv : region.intervals()) {
    std::vector<Rational> cuts{iv.lo};
    for (const auto& r : roots) {
      if (r > iv.lo && r < iv.hi) cuts.push_back(r);
    }
    if (iv.hi != iv.lo) cuts.push_back(iv.hi);

    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (iv.contains(cuts[i])) report.samples.push_back({cuts[i], fp(cuts[i])});
      if (i + 1 < cuts.size()) {
        const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
        report.samples.push_back({mid, fp(mid)});
      }
    }
  }

  bool pos = false;
  bool neg = false;
  for (const auto& s : report.samples) {
    pos = pos || s.value > 0;
    neg = neg || s.value < 0;
  }
  report.verdict = pos && neg ? Sign::mixed : pos ? Sign::nonnegative : neg ? Sign::nonpositive : Sign::zero;
  return report;
}

}  // namespace latcert
