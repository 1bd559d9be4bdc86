#include "latcert/gf2code.hpp"

#include <catch_amalgamated.hpp>

#include <bit>
#include <sstream>

using namespace latcert;

namespace {

// Straight binary-count enumeration, independent of the Gray-code walk in the library.
std::vector<std::uint64_t> enumerate_weights(const BinaryCode& c) {
  std::vector<std::uint64_t> w(static_cast<std::size_t>(c.length()) + 1, 0);
  const auto& g = c.generator();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.size()); ++m) {
    Word x = 0;
    for (std::size_t r = 0; r < g.size(); ++r) {
      if ((m >> r) & 1) x ^= g[r];
    }
    ++w[static_cast<std::size_t>(std::popcount(x))];
  }
  return w;
}

bool rows_orthogonal(const BinaryCode& c) {
  for (Word a : c.generator()) {
    for (Word b : c.generator()) {
      if (std::popcount(a & b) % 2) return false;
    }
  }
  return true;
}

std::string matrix_text(const BinaryCode& c) {
  std::ostringstream s;
  write_generator_matrix(s, c);
  return s.str();
}

}  // namespace

TEST_CASE("built-in codes are [32,16,8] self-dual doubly-even") {
  for (const auto& code : {reed_muller_2_5(), extended_quadratic_residue_32()}) {
    CHECK(code.length() == 32);
    CHECK(code.dimension() == 16);
    const auto r = code_report(code);
    const auto w = enumerate_weights(code);
    CHECK(r.weight_enumerator == w);
    CHECK(r.min_distance == 8);
    CHECK(r.self_dual == rows_orthogonal(code));
    CHECK(r.self_dual);
    CHECK(r.doubly_even);
    CHECK(w[0] == 1);
    CHECK(w[32] == 1);
    CHECK(w[8] == 620);
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      total += w[k];
      if (w[k]) CHECK(k % 4 == 0);
      CHECK(w[k] == w[32 - k]);
    }
    CHECK(total == 65536);
  }
}

TEST_CASE("the two built-ins are different codes with equal weight enumerators") {
  CHECK_FALSE(same_code(reed_muller_2_5(), extended_quadratic_residue_32()));
  CHECK(code_report(reed_muller_2_5()).weight_enumerator == code_report(extended_quadratic_residue_32()).weight_enumerator);
}

TEST_CASE("generator matrix files round-trip") {
  const auto rm = reed_muller_2_5();
  std::istringstream in("# second-order Reed-Muller\n" + matrix_text(rm));
  CHECK(same_code(parse_generator_matrix(in), rm));

  std::string spaced;
  for (char ch : matrix_text(extended_quadratic_residue_32())) {
    spaced += ch;
    if (ch != '\n') spaced += ' ';
  }
  std::istringstream in2(spaced);
  CHECK(same_code(parse_generator_matrix(in2), extended_quadratic_residue_32()));
}

TEST_CASE("rank-deficient matrices name a dependency") {
  auto rows = reed_muller_2_5().generator();
  rows[5] = rows[2];
  std::ostringstream s;
  for (Word r : rows) {
    for (int j = 0; j < 32; ++j) s << ((r >> j) & 1);
    s << '\n';
  }
  std::istringstream in(s.str());
  try {
    parse_generator_matrix(in);
    FAIL("expected a rank error");
  } catch (const RankError& e) {
    Word x = 0;
    for (int i : e.dependency()) x ^= rows[static_cast<std::size_t>(i)];
    CHECK(x == 0);
    CHECK_FALSE(e.dependency().empty());
  }
}

TEST_CASE("shape and parse errors") {
  std::istringstream extra(matrix_text(reed_muller_2_5()) + std::string(31, '0') + "1\n");
  CHECK_THROWS_WITH(parse_generator_matrix(extra), Catch::Matchers::ContainsSubstring("17x32"));
  std::istringstream ragged("0101\n011\n");
  CHECK_THROWS_AS(parse_generator_matrix(ragged, std::nullopt), CodeError);
  std::istringstream junk("01x1\n");
  CHECK_THROWS_AS(parse_generator_matrix(junk, std::nullopt), CodeError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_generator_matrix(empty), CodeError);
  CHECK_THROWS_AS(load_generator_matrix("/nonexistent/generator.txt"), std::exception);
}

TEST_CASE("small codes report correctly") {
  const BinaryCode hamming(8, {0b00001111, 0b00110011, 0b01010101, 0b11111111});  // extended Hamming [8,4,4]
  const auto r = code_report(hamming);
  CHECK(r.min_distance == 4);
  CHECK(r.self_dual);
  CHECK(r.doubly_even);
  CHECK(r.weight_enumerator[4] == 14);

  const BinaryCode rep(4, {0b0011});
  const auto rr = code_report(rep);
  CHECK_FALSE(rr.self_dual);
  CHECK_FALSE(rr.doubly_even);
  CHECK(rr.min_distance == 2);
}

TEST_CASE("enumeration guard refuses large dimensions") {
  std::vector<Word> rows;
  for (int i = 0; i < 30; ++i) rows.push_back(Word{1} << i);
  CHECK_THROWS_AS(code_report(BinaryCode(32, rows)), CodeError);
}
