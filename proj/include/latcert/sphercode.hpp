#pragma once

// Spherical-code analytics for codes whose points have integer coordinates
// and a common squared norm q; the inner product of x and y is (x.y)/q.

#include "latcert/gegenbauer.hpp"
#include "latcert/lattice32.hpp"
#include "latcert/pair_kernel.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace latcert {

class SphericalCode {
 public:
  SphericalCode(IntegerCode points) : points_(std::move(points)), packed_(points_) {
    if (points_.dimension < 1) throw std::invalid_argument("spherical code needs a positive dimension");
    if (points_.size() == 0) throw std::invalid_argument("spherical code must be non-empty");
    norm_ = points_.dot(0, 0);
    if (norm_ == 0) throw std::invalid_argument("zero vector cannot be placed on the sphere");
    for (std::size_t i = 1; i < points_.size(); ++i) {
      if (points_.dot(i, i) != norm_) throw std::invalid_argument("points must share one squared norm");
    }
  }

  static SphericalCode from_shell(const Shell& shell) {
    IntegerCode c{kLatticeDim, {}};
    c.coords.reserve(shell.size() * kLatticeDim);
    for (const auto& v : shell.vectors()) c.coords.insert(c.coords.end(), v.begin(), v.end());
    return SphericalCode(std::move(c));
  }

  static SphericalCode from_points(int dimension, const std::vector<std::vector<int>>& pts) {
    IntegerCode c{dimension, {}};
    for (const auto& p : pts) {
      if (static_cast<int>(p.size()) != dimension) throw std::invalid_argument("point has the wrong dimension");
      for (int v : p) {
        if (v < -127 || v > 127) throw std::invalid_argument("coordinates must fit in int8");
        c.coords.push_back(static_cast<std::int8_t>(v));
      }
    }
    return SphericalCode(std::move(c));
  }

  int dimension() const { return points_.dimension; }
  std::size_t size() const { return points_.size(); }
  long norm() const { return norm_; }
  const IntegerCode& points() const { return points_; }
  const PackedCode& packed() const { return packed_; }

  std::optional<std::size_t> index_of(const std::vector<std::int8_t>& p) const {
    if (static_cast<int>(p.size()) != dimension()) return std::nullopt;
    for (std::size_t i = 0; i < size(); ++i) {
      if (std::equal(p.begin(), p.end(), points_.point(i))) return i;
    }
    return std::nullopt;
  }

  Rational inner_product(long dotv) const {
    Rational t(dotv, norm_);
    t.canonicalize();
    return t;
  }

 private:
  IntegerCode points_;
  PackedCode packed_;
  long norm_ = 0;
};

/// Ordered pairs (x, y), x != y, counted by inner product.
struct InnerProductHistogram {
  std::map<Rational, std::uint64_t> counts;

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (const auto& [t, c] : counts) s += c;
    return s;
  }
  std::uint64_t at(const Rational& t) const {
    auto it = counts.find(t);
    return it == counts.end() ? 0 : it->second;
  }
  std::vector<Rational> support() const {
    std::vector<Rational> s;
    for (const auto& [t, c] : counts) s.push_back(t);
    return s;
  }
};

/// A_t for every inner product t seen from a point, including A_1 = 1 for the point itself.
struct DistanceDistribution {
  std::map<Rational, Rational> a;

  Rational total() const {
    Rational s = 0;
    for (const auto& [t, v] : a) s += v;
    return s;
  }
  Rational at(const Rational& t) const {
    auto it = a.find(t);
    return it == a.end() ? Rational(0) : it->second;
  }
  friend bool operator==(const DistanceDistribution&, const DistanceDistribution&) = default;
};

struct PassOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  std::function<void(std::size_t rows_done, std::size_t rows_total)> progress;
};

inline constexpr std::size_t kRowBatch = 64;

/// One pass over the x < y triangle; every unordered pair is counted twice.
inline InnerProductHistogram histogram(const SphericalCode& code, const PassOptions& opt = {}) {
  const auto& pk = code.packed();
  const std::size_t n = code.size();
  const std::size_t batches = (n + kRowBatch - 1) / kRowBatch;
  std::function<void(std::size_t)> prog;
  if (opt.progress) prog = [&](std::size_t d) { opt.progress(std::min(n, d * kRowBatch), n); };
  const DotTally tally = parallel_rows(
      batches, opt.threads,
      [&](std::size_t batch, DotTally& t) {
        std::vector<std::size_t> xs;
        for (std::size_t x = batch * kRowBatch; x < std::min(n, (batch + 1) * kRowBatch); ++x) xs.push_back(x);
        pk.tally_rows(
            xs, [](std::size_t x) { return x + 1; }, [n](std::size_t) { return n; }, false,
            [&t](std::size_t) -> DotTally& { return t; });
      },
      prog);
  InnerProductHistogram h;
  for (const auto& [v, c] : tally.sorted()) h.counts[code.inner_product(v)] += 2 * c;
  return h;
}

inline InnerProductHistogram histogram(const Shell& shell, const PassOptions& opt = {}) {
  return histogram(SphericalCode::from_shell(shell), opt);
}

inline DistanceDistribution distribution_from_tally(const SphericalCode& code, const DotTally& t) {
  DistanceDistribution d;
  d.a[Rational(1)] += 1;
  for (const auto& [v, c] : t.sorted()) d.a[code.inner_product(v)] += Rational(static_cast<unsigned long>(c));
  return d;
}

inline DistanceDistribution distribution_of_row(const SphericalCode& code, std::size_t x) {
  DotTally t;
  code.packed().tally_row(x, 0, code.size(), true, t);
  return distribution_from_tally(code, t);
}

/// Full rows for a batch of points, sharing each y tile across the batch.
inline std::vector<DistanceDistribution> distributions_of_rows(const SphericalCode& code,
                                                               std::span<const std::size_t> xs) {
  const std::size_t n = code.size();
  const auto& pk = code.packed();
  std::vector<std::size_t> unique(xs.begin(), xs.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<DotTally> by_unique(unique.size());
  pk.tally_rows(
      unique, [](std::size_t) { return std::size_t{0}; }, [n](std::size_t) { return n; }, true,
      [&](std::size_t x) -> DotTally& {
        return by_unique[static_cast<std::size_t>(std::lower_bound(unique.begin(), unique.end(), x) - unique.begin())];
      });
  std::vector<DistanceDistribution> out;
  out.reserve(xs.size());
  for (auto x : xs) {
    const auto k = static_cast<std::size_t>(std::lower_bound(unique.begin(), unique.end(), x) - unique.begin());
    out.push_back(distribution_from_tally(code, by_unique[k]));
  }
  return out;
}

class PointNotInCode : public std::invalid_argument {
 public:
  PointNotInCode() : std::invalid_argument("point is not a member of the code") {}
};

inline DistanceDistribution distance_distribution_at(const Shell& shell, const ShellVector& x) {
  const auto idx = shell.index_of(x);
  if (!idx) throw PointNotInCode();
  return distribution_of_row(SphericalCode::from_shell(shell), *idx);
}

/// Every point, or `count` seeded random points.
struct Sampling {
  bool all = false;
  std::size_t count = 1000;
  std::uint64_t seed = 1;

  static Sampling every_point() { return {true, 0, 0}; }
  static Sampling random(std::size_t count, std::uint64_t seed) { return {false, count, seed}; }
};

inline std::vector<std::size_t> sample_indices(std::size_t n, const Sampling& s) {
  std::vector<std::size_t> idx;
  if (s.all || s.count >= n) {
    idx.resize(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return idx;
  }
  std::mt19937_64 rng(s.seed);
  idx.reserve(s.count);
  for (std::size_t k = 0; k < s.count; ++k) idx.push_back(static_cast<std::size_t>(rng() % n));
  return idx;
}

struct InvarianceReport {
  bool invariant = true;
  std::size_t points_checked = 0;
  DistanceDistribution distribution;  // of the first checked point
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;  // point indices
  InnerProductHistogram observed;  // ordered pairs seen from the checked points
};

inline InvarianceReport check_distance_invariance(const SphericalCode& code, const Sampling& sampling,
                                                  const PassOptions& opt = {}) {
  const auto rows = sample_indices(code.size(), sampling);
  std::vector<DistanceDistribution> dists(rows.size());
  const std::size_t batches = (rows.size() + kRowBatch - 1) / kRowBatch;
  std::function<void(std::size_t)> prog;
  if (opt.progress) prog = [&](std::size_t d) { opt.progress(std::min(rows.size(), d * kRowBatch), rows.size()); };
  parallel_rows(
      batches, opt.threads,
      [&](std::size_t batch, DotTally&) {
        const std::size_t lo = batch * kRowBatch;
        const std::size_t hi = std::min(rows.size(), lo + kRowBatch);
        auto part = distributions_of_rows(code, std::span<const std::size_t>(rows).subspan(lo, hi - lo));
        std::move(part.begin(), part.end(), dists.begin() + static_cast<long>(lo));
      },
      prog);

  InvarianceReport r;
  r.points_checked = rows.size();
  r.distribution = dists.front();
  for (std::size_t k = 0; k < dists.size(); ++k) {
    if (r.invariant && dists[k] != dists.front()) {
      r.invariant = false;
      r.counterexample = std::make_pair(rows.front(), rows[k]);
    }
    for (const auto& [t, c] : dists[k].a) {
      if (t == 1) {
        if (c > 1) {
          const Rational extra = c - 1;
          r.observed.counts[t] += extra.get_num().get_ui();
        }
        continue;
      }
      r.observed.counts[t] += c.get_num().get_ui();
    }
  }
  return r;
}

inline InvarianceReport check_distance_invariance(const Shell& shell, const Sampling& sampling,
                                                  const PassOptions& opt = {}) {
  return check_distance_invariance(SphericalCode::from_shell(shell), sampling, opt);
}

struct MomentVector {
  int dimension = 0;
  std::vector<Rational> values;  // values[i-1] = M_i

  const Rational& operator[](int i) const { return values.at(static_cast<std::size_t>(i - 1)); }
  int upto() const { return static_cast<int>(values.size()); }
};

/// M_i = N * P_i(1) + sum_t counts[t] * P_i(t): the diagonal plus all ordered off-diagonal pairs.
inline MomentVector moments(const InnerProductHistogram& hist, std::size_t count, int dimension, int upto) {
  MomentVector m{dimension, {}};
  for (int i = 1; i <= upto; ++i) {
    const Polynomial p = gegenbauer_poly(dimension, i);
    Rational s(static_cast<unsigned long>(count));
    for (const auto& [t, c] : hist.counts) s += p(t) * Rational(static_cast<unsigned long>(c));
    m.values.push_back(s);
  }
  return m;
}

inline constexpr int kDefaultStrengthCap = 12;

struct DesignStrength {
  int tau = 0;
  std::vector<int> extra_vanishing;  // indices i > tau+1 with M_i = 0
};

inline DesignStrength design_strength(const MomentVector& m) {
  DesignStrength d;
  while (d.tau < m.upto() && m[d.tau + 1] == 0) ++d.tau;
  for (int i = d.tau + 2; i <= m.upto(); ++i) {
    if (m[i] == 0) d.extra_vanishing.push_back(i);
  }
  return d;
}

inline DesignStrength design_strength(const InnerProductHistogram& hist, std::size_t count, int dimension,
                                      int cap = kDefaultStrengthCap) {
  return design_strength(moments(hist, count, dimension, cap));
}

struct QuadratureVerdict {
  bool holds = false;
  bool beyond_strength = false;  // degree exceeds the declared strength; identity not guaranteed
  Rational lhs;  // N * f_0
  Rational rhs;  // sum_t A_t p(t)
};

inline QuadratureVerdict quadrature_check(const DistanceDistribution& dist, const Polynomial& p, int dimension,
                                          std::uint64_t count, int strength) {
  QuadratureVerdict v;
  v.beyond_strength = p.degree() > strength;
  v.lhs = gegenbauer_expand(dimension, p).constant_term() * Rational(static_cast<unsigned long>(count));
  v.rhs = 0;
  for (const auto& [t, a] : dist.a) v.rhs += a * p(t);
  v.holds = v.lhs == v.rhs;
  return v;
}

class DistributionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves sum_t A_t t^k = N * (t^k)_0, k = 0..d, over the nodes I and 1.
inline DistanceDistribution distribution_from_design(const std::vector<Rational>& inner_products,
                                                     std::uint64_t count, int dimension, int tau,
                                                     bool require_integral = true) {
  std::vector<Rational> nodes = inner_products;
  nodes.push_back(Rational(1));
  const std::size_t m = nodes.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (nodes[i] == nodes[j]) throw DistributionError("duplicate node " + to_string(nodes[i]) + "; system is singular");
    }
  }
  if (static_cast<int>(m) - 1 > tau) {
    throw DistributionError("need |I| <= tau for the quadrature system to be exact");
  }

  // Augmented Vandermonde system, rows k = 0..m-1.
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      Rational v = 1;
      for (std::size_t e = 0; e < k; ++e) v *= nodes[j];
      a[k][j] = v;
    }
    a[k][m] = gegenbauer_expand(dimension, Polynomial::monomial(k)).constant_term() *
              Rational(static_cast<unsigned long>(count));
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) throw DistributionError("quadrature system is singular");
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }

  DistanceDistribution d;
  for (std::size_t j = 0; j < m; ++j) {
    const Rational v = a[j][m] / a[j][j];
    if (v < 0) throw DistributionError("negative A_t at t = " + to_string(nodes[j]));
    if (require_integral && !is_integral(v)) {
      throw DistributionError("non-integral A_t = " + to_string(v) + " at t = " + to_string(nodes[j]));
    }
    d.a[nodes[j]] = v;
  }
  return d;
}

}  // namespace latcert
