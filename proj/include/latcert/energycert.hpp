#pragma once

// Energy lower bound for T-avoiding codes of the minimal-vector size: Hermite
// interpolation of the potential at a node multiset, positive definiteness of
// the Newton partial products, and the sign of the interpolation error.

#include "latcert/gegenbauer.hpp"
#include "latcert/potential.hpp"
#include "latcert/sign.hpp"
#include "latcert/sphercode.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcert {

inline constexpr const char* kRelativeTolerance = "1e-20";

class NodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Node multiset in Newton order; equal nodes must be adjacent and appear at most twice.
inline void validate_nodes(const std::vector<Rational>& nodes) {
  if (nodes.empty()) throw NodeError("node multiset is empty");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::size_t mult = 0;
    for (const auto& t : nodes) mult += (t == nodes[i]);
    if (mult > 2) throw NodeError("node " + to_string(nodes[i]) + " has multiplicity > 2; only h' is available");
    if (mult == 2 && !((i > 0 && nodes[i - 1] == nodes[i]) || (i + 1 < nodes.size() && nodes[i + 1] == nodes[i]))) {
      throw NodeError("repeated node " + to_string(nodes[i]) + " must appear in adjacent positions");
    }
  }
}

inline std::vector<Rational> default_nodes() {
  std::vector<Rational> v;
  for (const char* s : {"-1", "-1", "-1/2", "-1/4", "0", "0", "1/4", "1/2"}) v.push_back(parse_rational(s));
  return v;
}

/// Top diagonal of the Hermite divided-difference table: h[t_1], h[t_1,t_2], ..., h[t_1..t_m].
template <class S>
std::vector<S> divided_differences(const Potential& h, const std::vector<Rational>& nodes) {
  validate_nodes(nodes);
  for (const auto& t : nodes) {
    if (h.singular_at(t)) throw PotentialError("potential is singular at node " + to_string(t));
  }
  const std::size_t m = nodes.size();
  std::vector<S> z;
  for (const auto& t : nodes) z.push_back(scalar_from<S>(t));

  std::vector<S> col(m);
  for (std::size_t i = 0; i < m; ++i) col[i] = h.at<S>(z[i]);
  std::vector<S> top{col[0]};
  for (std::size_t j = 1; j < m; ++j) {
    std::vector<S> next(m - j);
    for (std::size_t i = 0; i + j < m; ++i) {
      if (nodes[i + j] == nodes[i]) {
        next[i] = h.slope<S>(z[i]);  // only j == 1 can reach here
      } else {
        next[i] = (col[i + 1] - col[i]) / (z[i + j] - z[i]);
      }
    }
    col = std::move(next);
    top.push_back(col[0]);
  }
  return top;
}

/// Newton form: H(t) = sum_i dd[i] * prod_{k<i} (t - t_k).
template <class S>
BasicPolynomial<S> newton_polynomial(const std::vector<S>& dd, const std::vector<Rational>& nodes) {
  BasicPolynomial<S> h;
  BasicPolynomial<S> basis = BasicPolynomial<S>::constant(S(1));
  for (std::size_t i = 0; i < dd.size(); ++i) {
    h += basis * dd[i];
    basis = basis * BasicPolynomial<S>::linear(scalar_from<S>(nodes[i]));
  }
  return h;
}

template <class S>
BasicPolynomial<S> hermite_interpolant(const Potential& h, const std::vector<Rational>& nodes) {
  return newton_polynomial(divided_differences<S>(h, nodes), nodes);
}

struct PartialProduct {
  Polynomial polynomial;  // (t - t_1)...(t - t_i)
  GegExpansion expansion;
  DefinitenessVerdict definiteness;
};

/// P_1 .. P_{m-1} for an m-node multiset.
inline std::vector<PartialProduct> partial_products(const std::vector<Rational>& nodes, int n) {
  std::vector<PartialProduct> out;
  Polynomial p = Polynomial::constant(1);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    p = p * Polynomial::linear(nodes[i]);
    auto e = gegenbauer_expand(n, p);
    auto v = is_positive_definite(e);
    out.push_back({p, std::move(e), std::move(v)});
  }
  return out;
}

/// Sign of prod (t - t_i) on [-1,1] \ T; the interpolation error h - H carries this sign
/// when the m-th derivative of h is positive.
inline SignReport error_sign_check(const std::vector<Rational>& nodes, const IntervalRegion& avoided) {
  return sign_on_region(factored_from_nodes(nodes), IntervalRegion::closed(Rational(-1), Rational(1)).minus(avoided));
}

/// Code size, inner products and avoided set the bound is stated for.
struct EnergyProblem {
  int dimension = 32;
  std::uint64_t count = kExtremalShellSize;
  int strength = 7;
  std::vector<Rational> inner_products;
  std::vector<Rational> nodes;
  IntervalRegion avoided;

  static EnergyProblem minimal_vectors_32() {
    EnergyProblem p;
    for (const char* s : {"-1", "-1/2", "-1/4", "0", "1/4", "1/2"}) p.inner_products.push_back(parse_rational(s));
    p.nodes = default_nodes();
    p.avoided = IntervalRegion::parse("(-1/2,-1/4)U(1/4,1/2)");
    return p;
  }
};

template <class S>
struct EnergyCertificate {
  std::string potential;
  bool exact = false;
  unsigned precision_digits = 0;  // 0 for exact certificates
  std::vector<Rational> nodes;
  IntervalRegion avoided;
  std::vector<S> divided_differences;
  BasicPolynomial<S> interpolant;
  BasicGegExpansion<S> interpolant_expansion;
  std::vector<PartialProduct> partial_products;
  SignReport error_sign;
  DistanceDistribution distribution;
  S lower_bound{};       // N * sum_t A_t h(t)
  S lower_bound_dual{};  // N^2 ((H)_0 - H(1)/N)
  bool forms_agree = false;
  std::optional<S> code_energy;
  std::optional<S> gap;  // code_energy - lower_bound
  bool valid = false;
  std::vector<std::string> reasons;
};

template <class S>
bool nearly_equal(const S& a, const S& b) {
  if constexpr (std::is_same_v<S, Rational>) {
    return a == b;
  } else {
    const Real scale = std::max(Real(abs(a)), Real(abs(b)));
    return abs(a - b) <= Real(kRelativeTolerance) * scale;
  }
}

class SingularPotential : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// E_h = sum_t counts[t] h(t) over ordered pairs of distinct points.
template <class S>
S code_energy(const InnerProductHistogram& hist, const Potential& h) {
  S e(0);
  for (const auto& [t, c] : hist.counts) {
    if (h.singular_at(t)) throw SingularPotential("potential is singular at inner product " + to_string(t));
    e += h.at<S>(scalar_from<S>(t)) * S(static_cast<unsigned long>(c));
  }
  return e;
}

template <class S>
EnergyCertificate<S> energy_lower_bound(const Potential& h,
                                        const EnergyProblem& problem = EnergyProblem::minimal_vectors_32()) {
  EnergyCertificate<S> c;
  c.potential = h.name;
  c.exact = std::is_same_v<S, Rational>;
  c.precision_digits = c.exact ? 0 : Real::default_precision();
  c.nodes = problem.nodes;
  c.avoided = problem.avoided;
  for (const auto& t : problem.inner_products) {
    if (h.singular_at(t)) throw SingularPotential("potential is singular at inner product " + to_string(t));
  }

  c.divided_differences = divided_differences<S>(h, problem.nodes);
  for (std::size_t i = 0; i < c.divided_differences.size(); ++i) {
    if (c.divided_differences[i] < 0) {
      c.reasons.push_back("divided difference h[t_1..t_" + std::to_string(i + 1) +
                          "] is negative; the potential is not absolutely monotone on these nodes");
    }
  }
  c.interpolant = newton_polynomial(c.divided_differences, problem.nodes);
  c.interpolant_expansion = gegenbauer_expand(problem.dimension, c.interpolant);

  c.partial_products = partial_products(problem.nodes, problem.dimension);
  for (std::size_t i = 0; i < c.partial_products.size(); ++i) {
    if (!c.partial_products[i].definiteness.positive_definite) {
      c.reasons.push_back("partial product P_" + std::to_string(i + 1) + " is not positive definite");
    }
  }

  c.error_sign = error_sign_check(problem.nodes, problem.avoided);
  if (!c.error_sign.is_nonnegative()) {
    c.reasons.push_back("node polynomial is negative somewhere on [-1,1] \\ " + problem.avoided.str());
  }

  c.distribution = distribution_from_design(problem.inner_products, problem.count, problem.dimension, problem.strength);
  const S n(static_cast<unsigned long>(problem.count));
  S sum(0);
  for (const auto& t : problem.inner_products) {
    sum += scalar_from<S>(c.distribution.at(t)) * h.at<S>(scalar_from<S>(t));
  }
  c.lower_bound = n * sum;
  c.lower_bound_dual = n * n * c.interpolant_expansion.constant_term() - n * c.interpolant(S(1));
  c.forms_agree = nearly_equal(c.lower_bound, c.lower_bound_dual);
  if (!c.forms_agree) c.reasons.push_back("quadrature and interpolation forms of the bound disagree");

  c.valid = c.reasons.empty();
  return c;
}

/// Adds the code's energy and the gap to the bound.
template <class S>
void attach_code_energy(EnergyCertificate<S>& c, const InnerProductHistogram& hist, const Potential& h) {
  c.code_energy = code_energy<S>(hist, h);
  c.gap = *c.code_energy - c.lower_bound;
  if (*c.gap < 0 && !nearly_equal(*c.code_energy, c.lower_bound)) {
    c.reasons.push_back("code energy lies below the certified lower bound");
    c.valid = false;
  }
}

}  // namespace latcert
