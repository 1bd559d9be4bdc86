#pragma once

#include "latcert/sphercode.hpp"

#include <string>

namespace latcert {

struct VerificationReport {
  std::string source;
  std::size_t count = 0;
  int dimension = 0;
  InnerProductHistogram histogram;
  Sampling sampling;
  InvarianceReport invariance;
  MomentVector moments;
  DesignStrength strength;
  bool valid = false;
  std::vector<std::string> reasons;
};

/// Full histogram pass, moments up to `cap`, and the (sampled or full) invariance check.
inline VerificationReport verify_shell(const Shell& shell, const Sampling& sampling, const PassOptions& opt = {},
                                       int cap = kDefaultStrengthCap) {
  const SphericalCode code = SphericalCode::from_shell(shell);
  VerificationReport r;
  r.source = shell.source();
  r.count = code.size();
  r.dimension = code.dimension();
  r.sampling = sampling;
  r.histogram = histogram(code, opt);
  r.moments = moments(r.histogram, r.count, r.dimension, cap);
  r.strength = design_strength(r.moments);
  r.invariance = check_distance_invariance(code, sampling, opt);

  if (!r.invariance.invariant) {
    const auto [a, b] = *r.invariance.counterexample;
    r.reasons.push_back("points " + std::to_string(a) + " and " + std::to_string(b) +
                        " have different distance distributions");
  }
  for (int i = 1; i <= r.moments.upto(); ++i) {
    if (r.moments[i] < 0) r.reasons.push_back("moment M_" + std::to_string(i) + " is negative");
  }
  r.valid = r.reasons.empty();
  return r;
}

}  // namespace latcert
