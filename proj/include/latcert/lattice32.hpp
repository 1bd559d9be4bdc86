#pragma once

// The lattice L(C) built from a doubly-even self-dual [32,16,8] code by
// Construction B plus the half-vector coset. Vectors are stored in integer
// coordinates s = 2*sqrt(2)*v, so v.v = 4 becomes s.s = 32 and lattice inner
// products are (s.s')/8.

#include "latcert/gf2code.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcert {

inline constexpr int kLatticeDim = 32;
inline constexpr int kShellNorm = 32;  // s.s for v.v = 4
inline constexpr std::size_t kExtremalShellSize = 146880;

using ShellVector = std::array<std::int8_t, kLatticeDim>;

inline int dot(const ShellVector& a, const ShellVector& b) {
  int s = 0;
  for (int i = 0; i < kLatticeDim; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
  return s;
}

inline ShellVector negate(ShellVector v) {
  for (auto& c : v) c = static_cast<std::int8_t>(-c);
  return v;
}

struct FamilyCounts {
  std::size_t pairs = 0;    // two coordinates +-4
  std::size_t octads = 0;   // +-2 on a weight-8 codeword, even number of minus signs
  std::size_t half = 0;     // all coordinates +-1
};

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Norm-4 layer of L(C), sorted lexicographically on s, no duplicates.
class Shell {
 public:
  Shell() = default;
  Shell(std::vector<ShellVector> vectors, std::string source, FamilyCounts families = {})
      : vectors_(std::move(vectors)), source_(std::move(source)), families_(families) {
    std::sort(vectors_.begin(), vectors_.end());
    if (std::adjacent_find(vectors_.begin(), vectors_.end()) != vectors_.end()) {
      throw LatticeError("shell contains duplicate vectors");
    }
  }

  std::size_t size() const { return vectors_.size(); }
  const std::vector<ShellVector>& vectors() const { return vectors_; }
  const ShellVector& operator[](std::size_t i) const { return vectors_[i]; }
  const std::string& source() const { return source_; }
  const FamilyCounts& families() const { return families_; }

  std::optional<std::size_t> index_of(const ShellVector& v) const {
    auto it = std::lower_bound(vectors_.begin(), vectors_.end(), v);
    if (it == vectors_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - vectors_.begin());
  }
  bool contains(const ShellVector& v) const { return index_of(v).has_value(); }

 private:
  std::vector<ShellVector> vectors_;
  std::string source_;
  FamilyCounts families_;
};

namespace detail {

inline void require_extremal_input(const CodeReport& r) {
  if (r.length != 32 || r.dimension != 16) throw LatticeError("Construction B here needs a [32,16] code");
  if (!r.self_dual) throw LatticeError("code is not self-dual");
  if (!r.doubly_even) throw LatticeError("code is not doubly-even");
}

inline std::vector<Word> codewords(const BinaryCode& c) {
  std::vector<Word> words;
  words.reserve(std::size_t{1} << c.dimension());
  c.for_each_codeword([&](Word w) { words.push_back(w); });
  return words;
}

}  // namespace detail

/// Shape enumeration of the norm-4 layer; exhaustive when the code has minimum distance 8.
inline Shell build_shell(const BinaryCode& code, std::string source = "code") {
  const auto report = code_report(code);
  detail::require_extremal_input(report);
  if (report.min_distance != 8) {
    throw LatticeError("code has minimum distance " + std::to_string(report.min_distance) +
                       "; the norm-4 shapes are only exhaustive for minimum distance 8");
  }

  std::vector<ShellVector> out;
  out.reserve(kExtremalShellSize);
  FamilyCounts fam;

  // x = (+-2, +-2) at any coordinate pair: x mod 2 = 0, coordinate sum in {-4, 0, 4}.
  for (int i = 0; i < kLatticeDim; ++i) {
    for (int j = i + 1; j < kLatticeDim; ++j) {
      for (int si : {-4, 4}) {
        for (int sj : {-4, 4}) {
          ShellVector v{};
          v[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(si);
          v[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(sj);
          out.push_back(v);
          ++fam.pairs;
        }
      }
    }
  }

  const auto words = detail::codewords(code);
  for (Word w : words) {
    // x = +-1 on an octad; coordinate sum 8 - 2m is 0 mod 4 iff the minus count m is even.
    if (std::popcount(w) == 8) {
      std::array<int, 8> support{};
      int k = 0;
      for (int j = 0; j < kLatticeDim; ++j) {
        if ((w >> j) & 1) support[static_cast<std::size_t>(k++)] = j;
      }
      for (unsigned signs = 0; signs < 256; ++signs) {
        if (std::popcount(signs) & 1) continue;
        ShellVector v{};
        for (int b = 0; b < 8; ++b) {
          v[static_cast<std::size_t>(support[static_cast<std::size_t>(b)])] =
              static_cast<std::int8_t>(((signs >> b) & 1) ? -2 : 2);
        }
        out.push_back(v);
        ++fam.octads;
      }
    }
    // Half-integer coset: s = 1 + 2g with g in {0,-1}; the minus support is the codeword.
    ShellVector h{};
    for (int j = 0; j < kLatticeDim; ++j) h[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(((w >> j) & 1) ? -1 : 1);
    out.push_back(h);
    ++fam.half;
  }
  return Shell(std::move(out), std::move(source), fam);
}

struct ExtremalVerdict {
  bool extremal = false;
  std::size_t norm2_vectors = 0;
};

/// Counts the norm-2 layer of L(C) by shape. In s-coordinates norm 2 means s.s = 16:
/// a single +-4 (coordinate sum +-2, never 0 mod 4), four +-2 on a weight-4 codeword with
/// an even number of minus signs, or all-odd coordinates (impossible, s.s >= 32).
inline ExtremalVerdict check_extremal(const BinaryCode& code) {
  const auto report = code_report(code);
  detail::require_extremal_input(report);
  // Norm 2 means x.x = 4 for integer x: a single +-2 has coordinate sum 2 mod 4 and is
  // excluded, four +-1 need a weight-4 codeword, and the half-integer coset has x.x >= 8.
  ExtremalVerdict v;
  code.for_each_codeword([&](Word w) {
    if (std::popcount(w) == 4) v.norm2_vectors += 8;
  });
  v.extremal = v.norm2_vectors == 0;
  return v;
}

class InvalidVenkovPair : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// e_{2,2}(x,z): shell vectors y with x.y = z.y = 2, i.e. s_x.s_y = s_z.s_y = 16.
inline int venkov_e22(const Shell& shell, const ShellVector& x, const ShellVector& z) {
  if (!shell.contains(x) || !shell.contains(z)) throw InvalidVenkovPair("Venkov pair must lie in the shell");
  if (dot(x, z) != 0) throw InvalidVenkovPair("Venkov pair must be orthogonal");
  int count = 0;
  for (const auto& y : shell.vectors()) {
    if (dot(x, y) == 16 && dot(z, y) == 16) ++count;
  }
  return count;
}

/// x = (0,...,0,2,2)/sqrt2 and z = (0,...,0,-2,2)/sqrt2 in s-coordinates.
inline std::pair<ShellVector, ShellVector> venkov_witness() {
  ShellVector x{};
  ShellVector z{};
  x[30] = 4;
  x[31] = 4;
  z[30] = -4;
  z[31] = 4;
  return {x, z};
}

struct VenkovSample {
  std::size_t x = 0;
  std::size_t z = 0;
  int e22 = 0;
};

/// Seeded sample of orthogonal pairs (x uniform, z uniform among rejection draws).
inline std::vector<VenkovSample> venkov_sample(const Shell& shell, std::size_t count, std::uint64_t seed,
                                               std::size_t attempts_per_pair = 10000) {
  if (count == 0) throw std::invalid_argument("sample count must be at least 1");
  if (shell.size() == 0) throw LatticeError("empty shell");
  std::mt19937_64 rng(seed);
  const std::uint64_t n = shell.size();
  std::vector<VenkovSample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t xi = static_cast<std::size_t>(rng() % n);
    std::optional<std::size_t> zi;
    for (std::size_t a = 0; a < attempts_per_pair && !zi; ++a) {
      const auto cand = static_cast<std::size_t>(rng() % n);
      if (dot(shell[xi], shell[cand]) == 0) zi = cand;
    }
    if (!zi) throw LatticeError("no orthogonal partner found within the attempt budget");
    out.push_back({xi, *zi, venkov_e22(shell, shell[xi], shell[*zi])});
  }
  return out;
}

// Shell file: "latcert-shell v1 n=32 count=<N> scale=2sqrt2" then one vector per line.

inline void write_shell(std::ostream& out, const Shell& shell) {
  out << "latcert-shell v1 n=32 count=" << shell.size() << " scale=2sqrt2\n";
  std::string line;
  for (const auto& v : shell.vectors()) {
    line.clear();
    for (int i = 0; i < kLatticeDim; ++i) {
      if (i) line += ' ';
      line += std::to_string(static_cast<int>(v[static_cast<std::size_t>(i)]));
    }
    line += '\n';
    out << line;
  }
}

inline Shell read_shell(std::istream& in, std::string source = "file") {
  std::string header;
  if (!std::getline(in, header)) throw LatticeError("shell file is empty");
  std::istringstream hs(header);
  std::string magic, version, dim, cnt, scale;
  hs >> magic >> version >> dim >> cnt >> scale;
  if (magic != "latcert-shell" || version != "v1" || dim != "n=32" || scale != "scale=2sqrt2" ||
      cnt.rfind("count=", 0) != 0) {
    throw LatticeError("bad shell header: " + header);
  }
  std::size_t expected = 0;
  try {
    expected = std::stoul(cnt.substr(6));
  } catch (const std::exception&) {
    throw LatticeError("bad count in shell header: " + header);
  }

  std::vector<ShellVector> vs;
  vs.reserve(expected);
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    ShellVector v{};
    int parity = -1;
    for (int i = 0; i < kLatticeDim; ++i) {
      int c = 0;
      if (!(ls >> c)) throw LatticeError("line " + std::to_string(lineno) + ": expected 32 integers");
      if (c < -127 || c > 127) throw LatticeError("line " + std::to_string(lineno) + ": coordinate out of range");
      const int p = ((c % 2) + 2) % 2;
      if (parity >= 0 && p != parity) throw LatticeError("line " + std::to_string(lineno) + ": mixed parity");
      parity = p;
      v[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(c);
    }
    std::string extra;
    if (ls >> extra) throw LatticeError("line " + std::to_string(lineno) + ": more than 32 entries");
    if (dot(v, v) != kShellNorm) throw LatticeError("line " + std::to_string(lineno) + ": s.s != 32");
    vs.push_back(v);
  }
  if (vs.size() != expected) {
    throw LatticeError("shell header declares " + std::to_string(expected) + " vectors, file has " +
                       std::to_string(vs.size()));
  }
  return Shell(std::move(vs), std::move(source));
}

}  // namespace latcert
