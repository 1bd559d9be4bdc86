#pragma once

// Binary linear codes of length <= 64 given by a generator matrix.
// Bit j of a row word is coordinate j.

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcert {

using Word = std::uint64_t;

class CodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankError : public CodeError {
 public:
  RankError(std::vector<int> dependency)
      : CodeError(describe(dependency)), dependency_(std::move(dependency)) {}
  /// Rows whose sum is zero.
  const std::vector<int>& dependency() const { return dependency_; }

 private:
  static std::string describe(const std::vector<int>& rows) {
    std::string s = "generator rows are linearly dependent: rows";
    for (int r : rows) s += " " + std::to_string(r);
    return s + " sum to zero";
  }
  std::vector<int> dependency_;
};

class BinaryCode {
 public:
  BinaryCode(int length, std::vector<Word> rows) : length_(length), rows_(std::move(rows)) {
    if (length_ < 1 || length_ > 64) throw CodeError("code length must be in [1,64]");
    if (rows_.size() > 64) throw CodeError("at most 64 generator rows are supported");
    const Word mask = length_ == 64 ? ~Word{0} : (Word{1} << length_) - 1;
    for (auto r : rows_) {
      if (r & ~mask) throw CodeError("generator row has bits beyond the code length");
    }
    if (auto dep = find_dependency(rows_)) throw RankError(*dep);
  }

  int length() const { return length_; }
  int dimension() const { return static_cast<int>(rows_.size()); }
  const std::vector<Word>& generator() const { return rows_; }

  /// Visits every codeword once (Gray-code order).
  void for_each_codeword(const std::function<void(Word)>& visit) const {
    const int k = dimension();
    if (k > 40) throw CodeError("refusing to enumerate 2^" + std::to_string(k) + " codewords");
    Word w = 0;
    visit(w);
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t i = 1; i < total; ++i) {
      w ^= rows_[static_cast<std::size_t>(std::countr_zero(i))];
      visit(w);
    }
  }

  /// Reduced row echelon form; two codes are equal iff these agree.
  std::vector<Word> reduced_basis() const {
    std::vector<Word> b = rows_;
    std::size_t rank = 0;
    for (int col = 0; col < length_ && rank < b.size(); ++col) {
      const Word bit = Word{1} << col;
      auto piv = std::find_if(b.begin() + static_cast<long>(rank), b.end(), [&](Word r) { return r & bit; });
      if (piv == b.end()) continue;
      std::iter_swap(b.begin() + static_cast<long>(rank), piv);
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (i != rank && (b[i] & bit)) b[i] ^= b[rank];
      }
      ++rank;
    }
    return b;
  }

  friend bool same_code(const BinaryCode& a, const BinaryCode& b) {
    return a.length_ == b.length_ && a.reduced_basis() == b.reduced_basis();
  }

 private:
  // Gaussian elimination tracking which original rows make up each reduced row.
  static std::optional<std::vector<int>> find_dependency(const std::vector<Word>& rows) {
    std::vector<std::pair<Word, Word>> basis;  // (vector, combination mask)
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Word v = rows[i];
      Word combo = Word{1} << i;
      for (const auto& [b, c] : basis) {
        const Word lead = Word{1} << (63 - std::countl_zero(b));
        if (v & lead) {
          v ^= b;
          combo ^= c;
        }
      }
      if (v == 0) {
        std::vector<int> dep;
        for (int j = 0; j < 64; ++j) {
          if (combo & (Word{1} << j)) dep.push_back(j);
        }
        return dep;
      }
      basis.emplace_back(v, combo);
      std::sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    }
    return std::nullopt;
  }

  int length_;
  std::vector<Word> rows_;
};

struct CodeReport {
  int length = 0;
  int dimension = 0;
  bool self_dual = false;
  bool doubly_even = false;
  int min_distance = 0;  // 0 when the code is {0}
  std::vector<std::uint64_t> weight_enumerator;  // index = weight, size length+1
};

inline constexpr int kEnumerationGuard = 28;

inline CodeReport code_report(const BinaryCode& c) {
  if (c.dimension() > kEnumerationGuard) {
    throw CodeError("dimension " + std::to_string(c.dimension()) + " exceeds the enumeration guard of " +
                    std::to_string(kEnumerationGuard));
  }
  CodeReport r;
  r.length = c.length();
  r.dimension = c.dimension();
  r.weight_enumerator.assign(static_cast<std::size_t>(c.length()) + 1, 0);
  c.for_each_codeword([&](Word w) { ++r.weight_enumerator[static_cast<std::size_t>(std::popcount(w))]; });

  for (std::size_t w = 1; w < r.weight_enumerator.size(); ++w) {
    if (r.weight_enumerator[w]) {
      r.min_distance = static_cast<int>(w);
      break;
    }
  }
  r.doubly_even = true;
  for (std::size_t w = 0; w < r.weight_enumerator.size(); ++w) {
    if (r.weight_enumerator[w] && w % 4 != 0) r.doubly_even = false;
  }
  bool orthogonal = true;
  const auto& g = c.generator();
  for (std::size_t i = 0; i < g.size() && orthogonal; ++i) {
    for (std::size_t j = i; j < g.size(); ++j) {
      if (std::popcount(g[i] & g[j]) & 1) {
        orthogonal = false;
        break;
      }
    }
  }
  r.self_dual = orthogonal && 2 * c.dimension() == c.length();
  return r;
}

/// RM(2,5): evaluations of all Boolean monomials of degree <= 2 in five variables.
inline BinaryCode reed_muller_2_5() {
  auto eval = [](auto&& pred) {
    Word w = 0;
    for (int p = 0; p < 32; ++p) {
      if (pred(p)) w |= Word{1} << p;
    }
    return w;
  };
  std::vector<Word> rows;
  rows.push_back(eval([](int) { return true; }));
  for (int i = 0; i < 5; ++i) rows.push_back(eval([i](int p) { return (p >> i) & 1; }));
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) rows.push_back(eval([i, j](int p) { return ((p >> i) & (p >> j)) & 1; }));
  }
  return BinaryCode(32, std::move(rows));
}

namespace detail {

// GF(32) = GF(2)[a]/(a^5 + a^2 + 1).
struct Gf32 {
  std::array<int, 31> exp{};
  std::array<int, 32> log{};
  Gf32() {
    int x = 1;
    for (int i = 0; i < 31; ++i) {
      exp[static_cast<std::size_t>(i)] = x;
      log[static_cast<std::size_t>(x)] = i;
      x <<= 1;
      if (x & 32) x ^= 0b100101;
    }
  }
  int mul(int a, int b) const {
    if (!a || !b) return 0;
    return exp[static_cast<std::size_t>((log[static_cast<std::size_t>(a)] + log[static_cast<std::size_t>(b)]) % 31)];
  }
};

}  // namespace detail

/// Extended binary quadratic residue code of length 32 (QR code of length 31 plus overall parity).
inline BinaryCode extended_quadratic_residue_32() {
  const detail::Gf32 f;
  std::vector<int> residues;
  for (int r = 1; r < 31; ++r) {
    if (std::find(residues.begin(), residues.end(), (r * r) % 31) == residues.end()) residues.push_back((r * r) % 31);
  }
  // g(x) = prod over residues r of (x - a^r), coefficients in GF(32), lowest degree first.
  std::vector<int> g{1};
  for (int r : residues) {
    const int root = f.exp[static_cast<std::size_t>(r)];
    std::vector<int> next(g.size() + 1, 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      next[i + 1] ^= g[i];
      next[i] ^= f.mul(g[i], root);
    }
    g = std::move(next);
  }
  Word gw = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > 1) throw std::logic_error("quadratic residue generator is not binary");
    if (g[i]) gw |= Word{1} << i;
  }
  const int k = 31 - static_cast<int>(g.size() - 1);
  std::vector<Word> rows;
  for (int s = 0; s < k; ++s) {
    Word row = gw << s;
    if (std::popcount(row) & 1) row |= Word{1} << 31;
    rows.push_back(row);
  }
  return BinaryCode(32, std::move(rows));
}

struct MatrixShape {
  int rows;
  int cols;
};

/// ASCII generator matrix: one row per line of '0'/'1', whitespace ignored, '#' starts a comment.
inline BinaryCode parse_generator_matrix(std::istream& in, std::optional<MatrixShape> expect = MatrixShape{16, 32}) {
  std::vector<Word> rows;
  int width = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    Word w = 0;
    int n = 0;
    for (char ch : line) {
      if (ch == '0' || ch == '1') {
        if (n >= 64) throw CodeError("line " + std::to_string(lineno) + ": more than 64 columns");
        if (ch == '1') w |= Word{1} << n;
        ++n;
      } else if (!std::isspace(static_cast<unsigned char>(ch))) {
        throw CodeError("line " + std::to_string(lineno) + ": unexpected character '" + std::string(1, ch) + "'");
      }
    }
    if (n == 0) continue;
    if (width >= 0 && n != width) {
      throw CodeError("line " + std::to_string(lineno) + ": row has " + std::to_string(n) + " columns, expected " +
                      std::to_string(width));
    }
    width = n;
    rows.push_back(w);
  }
  if (rows.empty()) throw CodeError("generator matrix file has no rows");
  if (expect && (static_cast<int>(rows.size()) != expect->rows || width != expect->cols)) {
    throw CodeError("generator matrix is " + std::to_string(rows.size()) + "x" + std::to_string(width) +
                    ", expected " + std::to_string(expect->rows) + "x" + std::to_string(expect->cols));
  }
  return BinaryCode(width, std::move(rows));
}

inline BinaryCode load_generator_matrix(const std::string& path,
                                        std::optional<MatrixShape> expect = MatrixShape{16, 32}) {
  std::ifstream in(path);
  if (!in) throw CodeError("cannot open generator matrix file: " + path);
  return parse_generator_matrix(in, expect);
}

inline void write_generator_matrix(std::ostream& out, const BinaryCode& c) {
  for (Word r : c.generator()) {
    for (int j = 0; j < c.length(); ++j) out << (((r >> j) & 1) ? '1' : '0');
    out << '\n';
  }
}

}  // namespace latcert
