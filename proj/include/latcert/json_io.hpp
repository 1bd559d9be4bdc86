#pragma once

// JSON records for every report and certificate. Rationals are "p/q" strings;
// MPFR values are decimal strings at the working precision.

#include "latcert/energycert.hpp"
#include "latcert/gf2code.hpp"
#include "latcert/lpcert.hpp"
#include "latcert/verification.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <string>

namespace latcert {

using Json = nlohmann::ordered_json;

inline Json json_of(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

template <class S>
Json json_of_scalar(const S& v) {
  if constexpr (std::is_same_v<S, Rational>) {
    return to_string(v);
  } else {
    return to_string(v, static_cast<int>(Real::default_precision()));
  }
}

inline Json json_of(const Polynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coefficients()) a.push_back(json_of(c));
  return {{"dense", a}};
}

inline Json json_of(const FactoredPolynomial& p) {
  Json f = Json::array();
  for (const auto& r : p.factors()) f.push_back({json_of(r.root), r.multiplicity});
  return {{"factored", {{"leading", json_of(p.leading())}, {"factors", f}}}};
}

/// {"factored": {...}} or {"dense": [...]}; dense input must split over Q.
inline FactoredPolynomial polynomial_from_json(const Json& j) {
  if (j.contains("factored")) {
    const auto& f = j.at("factored");
    const Rational leading = f.contains("leading") ? rational_from_json(f.at("leading")) : Rational(1);
    std::vector<RootFactor> roots;
    for (const auto& r : f.at("factors")) {
      if (!r.is_array() || r.size() != 2) throw ParseError("factor must be [root, multiplicity]: " + r.dump());
      const Rational m = rational_from_json(r[1]);
      if (!is_integral(m) || m < 1) throw ParseError("multiplicity must be a positive integer: " + r.dump());
      roots.push_back({rational_from_json(r[0]), static_cast<unsigned>(m.get_num().get_ui())});
    }
    return FactoredPolynomial(leading, std::move(roots));
  }
  if (j.contains("dense")) {
    std::vector<Rational> c;
    for (const auto& x : j.at("dense")) c.push_back(rational_from_json(x));
    return factor_over_rationals(Polynomial(std::move(c)));
  }
  throw ParseError("polynomial JSON needs a \"factored\" or \"dense\" key");
}

inline FactoredPolynomial load_polynomial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return polynomial_from_json(j);
}

template <class S>
Json json_of(const BasicGegExpansion<S>& e) {
  Json a = Json::array();
  for (const auto& c : e.coeffs) a.push_back(json_of_scalar(c));
  return a;
}

inline Json json_of(const SignReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples) samples.push_back({{"t", json_of(s.t)}, {"value", json_of(s.value)}});
  return {{"verdict", to_string(r.verdict)}, {"samples", samples}};
}

inline Json json_of(const CodeReport& r) {
  return {{"length", r.length},
          {"dimension", r.dimension},
          {"self_dual", r.self_dual},
          {"doubly_even", r.doubly_even},
          {"min_distance", r.min_distance},
          {"weight_enumerator", r.weight_enumerator}};
}

inline Json json_of(const InnerProductHistogram& h) {
  Json o = Json::object();
  for (const auto& [t, c] : h.counts) o[to_string(t)] = c;
  return o;
}

inline Json json_of(const DistanceDistribution& d) {
  Json o = Json::object();
  for (const auto& [t, a] : d.a) o[to_string(t)] = json_of(a);
  return o;
}

inline Json json_of(const VerificationReport& r) {
  Json moments = Json::array();
  for (const auto& m : r.moments.values) moments.push_back(json_of(m));
  Json inv = {{"invariant", r.invariance.invariant},
              {"points_checked", r.invariance.points_checked},
              {"mode", r.sampling.all ? "all" : "sample"}};
  if (!r.sampling.all) inv["seed"] = r.sampling.seed;
  if (r.invariance.counterexample) {
    inv["counterexample"] = {r.invariance.counterexample->first, r.invariance.counterexample->second};
  }
  return {{"source", r.source},
          {"count", r.count},
          {"dimension", r.dimension},
          {"inner_products", json_of(r.histogram)},
          {"distance_distribution", json_of(r.invariance.distribution)},
          {"invariant", r.invariance.invariant},
          {"invariance", inv},
          {"moments", moments},
          {"design_strength", {{"tau", r.strength.tau}, {"extra_vanishing", r.strength.extra_vanishing}}},
          {"valid", r.valid},
          {"reasons", r.reasons}};
}

inline Json json_of(const BoundCertificate& c) {
  Json j = {{"kind", to_string(c.kind)},
            {"polynomial", json_of(c.polynomial)},
            {"dimension", c.dimension},
            {"T", c.avoided.str()},
            {"s", c.s_max ? Json(json_of(*c.s_max)) : Json(nullptr)},
            {"assumed_strength", c.assumed_strength ? Json(*c.assumed_strength) : Json(nullptr)},
            {"coefficients", json_of(c.expansion)},
            {"sign_region", c.sign_region.str()},
            {"sign_report", json_of(c.sign_report)},
            {"value_at_one", json_of(c.value_at_one)},
            {"bound", json_of(c.bound)},
            {"valid", c.valid}};
  j["offending_coefficients"] = c.offending_coefficients;
  j["reasons"] = c.reasons;
  return j;
}

template <class S>
Json json_of(const EnergyCertificate<S>& c) {
  Json nodes = Json::array();
  for (const auto& t : c.nodes) nodes.push_back(json_of(t));
  Json dd = Json::array();
  for (const auto& v : c.divided_differences) dd.push_back(json_of_scalar(v));
  Json interp = Json::array();
  for (const auto& v : c.interpolant.coefficients()) interp.push_back(json_of_scalar(v));
  Json pps = Json::array();
  for (const auto& p : c.partial_products) {
    pps.push_back({{"polynomial", json_of(p.polynomial)},
                   {"coefficients", json_of(p.expansion)},
                   {"positive_definite", p.definiteness.positive_definite}});
  }
  return {{"kind", "energy"},
          {"potential", c.potential},
          {"exact", c.exact},
          {"precision_digits", c.precision_digits},
          {"nodes", nodes},
          {"T", c.avoided.str()},
          {"divided_differences", dd},
          {"interpolant", {{"dense", interp}}},
          {"coefficients", json_of(c.interpolant_expansion)},
          {"partial_products", pps},
          {"sign_report", json_of(c.error_sign)},
          {"distance_distribution", json_of(c.distribution)},
          {"lower_bound", json_of_scalar(c.lower_bound)},
          {"lower_bound_dual", json_of_scalar(c.lower_bound_dual)},
          {"forms_agree", c.forms_agree},
          {"code_energy", c.code_energy ? json_of_scalar(*c.code_energy) : Json(nullptr)},
          {"gap", c.gap ? json_of_scalar(*c.gap) : Json(nullptr)},
          {"valid", c.valid},
          {"reasons", c.reasons}};
}

}  // namespace latcert
