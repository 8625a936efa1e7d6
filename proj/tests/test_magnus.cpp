#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "nilcert/expr.hpp"
#include "nilcert/series.hpp"

using namespace nilcert;
using nilcert::test::heis_eval;
using nilcert::test::random_reduced_word;

namespace {
const Alphabet kAB = Alphabet::from_csv("a,b");

TruncatedSeries expand(const char* text, int c_max) {
  return magnus_expand(read_word(text, kAB), c_max, kAB);
}

BigInt coeff(const TruncatedSeries& s, std::initializer_list<uint32_t> mono) {
  return s.coeff(Monomial(mono));
}
}  // namespace

TEST_CASE("series product basics") {
  // (1+x)(1 - x + x^2) telescopes to 1 at c_max = 2
  TruncatedSeries a = TruncatedSeries::one(2, kAB);
  a.add_term({0}, 1);
  TruncatedSeries b = TruncatedSeries::one(2, kAB);
  b.add_term({0}, -1);
  b.add_term({0, 0}, 1);
  CHECK(series_mul(a, b).is_one());

  // (1+x)(1+y) = 1 + x + y + xy
  TruncatedSeries c = TruncatedSeries::one(2, kAB);
  c.add_term({1}, 1);
  TruncatedSeries p = series_mul(a, c);
  CHECK(coeff(p, {0}) == BigInt(1));
  CHECK(coeff(p, {1}) == BigInt(1));
  CHECK(coeff(p, {0, 1}) == BigInt(1));
  CHECK(coeff(p, {1, 0}) == BigInt(0));
  CHECK(p.terms().size() == 4);

  CHECK_THROWS(series_mul(a, TruncatedSeries::one(3, kAB)));
  CHECK_THROWS(series_mul(a, TruncatedSeries::one(2, Alphabet::from_csv("x,y"))));
}

TEST_CASE("identity and associativity on random group-like series") {
  std::mt19937 rng(3);
  for (int i = 0; i < 50; ++i) {
    TruncatedSeries s = magnus_expand(random_reduced_word(rng, 12), 3, kAB);
    TruncatedSeries one = TruncatedSeries::one(3, kAB);
    CHECK(series_mul(one, s) == s);
    CHECK(series_mul(s, one) == s);
    TruncatedSeries t = magnus_expand(random_reduced_word(rng, 8), 3, kAB);
    TruncatedSeries u = magnus_expand(random_reduced_word(rng, 8), 3, kAB);
    CHECK(series_mul(series_mul(s, t), u) == series_mul(s, series_mul(t, u)));
  }
}

TEST_CASE("series inverse") {
  TruncatedSeries s = TruncatedSeries::one(3, kAB);
  s.add_term({0}, 1);  // 1 + x
  TruncatedSeries inv = series_inv(s);
  CHECK(coeff(inv, {0}) == BigInt(-1));
  CHECK(coeff(inv, {0, 0}) == BigInt(1));
  CHECK(coeff(inv, {0, 0, 0}) == BigInt(-1));
  CHECK(series_mul(s, inv).is_one());

  CHECK(series_inv(TruncatedSeries::one(3, kAB)).is_one());

  TruncatedSeries bad = TruncatedSeries::one(2, kAB);
  bad.add_term({}, 1);  // constant 2
  CHECK_THROWS(series_inv(bad));

  std::mt19937 rng(9);
  for (int i = 0; i < 50; ++i) {
    TruncatedSeries g = magnus_expand(random_reduced_word(rng, 10), 4, kAB);
    CHECK(series_inv(series_inv(g)) == g);
    CHECK(series_mul(g, series_inv(g)).is_one());
  }
}

TEST_CASE("expansion examples") {
  TruncatedSeries s = expand("a", 2);
  CHECK(s.constant_term() == BigInt(1));
  CHECK(coeff(s, {0}) == BigInt(1));
  CHECK(s.terms().size() == 2);

  s = expand("[a,b]", 2);  // 1 + ab - ba
  CHECK(s.constant_term() == BigInt(1));
  CHECK(coeff(s, {0, 1}) == BigInt(1));
  CHECK(coeff(s, {1, 0}) == BigInt(-1));
  CHECK(s.terms().size() == 3);

  CHECK(expand("a a^-1", 3).is_one());
}

TEST_CASE("expansion is a homomorphism") {
  std::mt19937 rng(17);
  for (int i = 0; i < 1000; ++i) {
    ReducedWord u = random_reduced_word(rng, rng() % 14);
    ReducedWord v = random_reduced_word(rng, rng() % 14);
    int c = 2 + i % 3;  // c_max <= 4
    CHECK(magnus_expand(u * v, c, kAB) ==
          series_mul(magnus_expand(u, c, kAB), magnus_expand(v, c, kAB)));
  }
  for (int i = 0; i < 100; ++i) {
    ReducedWord w = random_reduced_word(rng, rng() % 20);
    CHECK(series_mul(magnus_expand(w, 4, kAB), magnus_expand(w.inverse(), 4, kAB)).is_one());
  }
}

TEST_CASE("parallel expansion equals the serial reference") {
  std::mt19937 rng(29);
  for (size_t len : {0u, 40u, 300u, 1500u}) {
    ReducedWord w = random_reduced_word(rng, len);
    for (int c = 1; c <= 4; ++c)
      CHECK(magnus_expand(w, c, kAB) == magnus_expand_serial(w, c, kAB));
  }
  ReducedWord w = build_w(60, 3);  // 600 letters, structured
  CHECK(magnus_expand(w, 4, kAB) == magnus_expand_serial(w, 4, kAB));
}

TEST_CASE("gamma membership") {
  ReducedWord c2 = read_word("[a,b]", kAB);
  CHECK(gamma_member(c2, 1, kAB));
  CHECK(gamma_member(c2, 2, kAB));
  CHECK_FALSE(gamma_member(c2, 3, kAB));

  CHECK_FALSE(gamma_member(read_word("a", kAB), 2, kAB));
  CHECK(gamma_member(build_w(2, 3), 3, kAB));
  CHECK_FALSE(gamma_member(build_w(2, 3), 4, kAB));
  CHECK(gamma_member(ReducedWord{}, 4, kAB));
}

TEST_CASE("filtration: [gamma_i, gamma_j] lands in gamma_{i+j}") {
  std::mt19937 rng(41);
  auto random_gamma = [&](int c) {
    // random conjugates of an iterated commutator keep the class
    ReducedWord base = c == 1 ? random_reduced_word(rng, 1 + rng() % 3) : build_w(1 + rng() % 2, c);
    return base.conjugated_by(random_reduced_word(rng, rng() % 4));
  };
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j + i <= 4; ++j)
      for (int rep = 0; rep < 20; ++rep) {
        ReducedWord u = random_gamma(i), v = random_gamma(j);
        CHECK(gamma_member(ReducedWord::commutator(u, v), i + j, kAB));
      }
}

TEST_CASE("class-2 equality agrees with the unitriangular matrix model") {
  std::mt19937 rng(53);
  for (int i = 0; i < 1000; ++i) {
    ReducedWord u = random_reduced_word(rng, rng() % 12);
    ReducedWord v = random_reduced_word(rng, rng() % 12);
    bool series_eq = magnus_expand(u, 2, kAB) == magnus_expand(v, 2, kAB);
    bool matrix_eq = heis_eval(u) == heis_eval(v);
    CHECK(series_eq == matrix_eq);
  }
}

TEST_CASE("lie components") {
  HomogeneousVector v = lie_component(read_word("[a,b]", kAB), 2, kAB);
  CHECK(v.coeffs == decltype(v.coeffs){{{0, 1}, BigInt(1)}, {{1, 0}, BigInt(-1)}});
  CHECK(v.l1_norm() == BigInt(2));

  v = lie_component(read_word("[a^2,b^2]", kAB), 2, kAB);
  CHECK(v.coeffs == decltype(v.coeffs){{{0, 1}, BigInt(4)}, {{1, 0}, BigInt(-4)}});

  // [a,[a,b]] -> aab - 2 aba + baa
  v = lie_component(read_word("[a,[a,b]]", kAB), 3, kAB);
  CHECK(v.coeffs == decltype(v.coeffs){{{0, 0, 1}, BigInt(1)},
                                       {{0, 1, 0}, BigInt(-2)},
                                       {{1, 0, 0}, BigInt(1)}});
  CHECK(v.l1_norm() == BigInt(4));

  CHECK_THROWS_AS(lie_component(read_word("a b", kAB), 2, kAB), std::domain_error);
}

TEST_CASE("lie component contract: additive, conjugation invariant, odd") {
  std::mt19937 rng(67);
  for (int c = 2; c <= 3; ++c) {
    for (int i = 0; i < 40; ++i) {
      ReducedWord u = build_w(1 + rng() % 3, c).conjugated_by(random_reduced_word(rng, rng() % 4));
      ReducedWord v = build_w(1 + rng() % 3, c, 1, 0).conjugated_by(random_reduced_word(rng, rng() % 4));
      HomogeneousVector sum = lie_component(u, c, kAB);
      sum += lie_component(v, c, kAB);
      CHECK(lie_component(u * v, c, kAB) == sum);
      ReducedWord g = random_reduced_word(rng, rng() % 6);
      CHECK(lie_component(u.conjugated_by(g), c, kAB) == lie_component(u, c, kAB));
      CHECK(lie_component(u.inverse(), c, kAB) == -lie_component(u, c, kAB));
    }
  }
}

TEST_CASE("homogeneity of w_n components") {
  for (int c = 2; c <= 4; ++c) {
    HomogeneousVector base = lie_component(build_w(1, c), c, kAB);
    for (int64_t n = 1; n <= 10; ++n) {
      BigInt scale(1);
      for (int i = 0; i < c; ++i) scale *= BigInt(n);
      CHECK(lie_component(build_w(n, c), c, kAB) == base.scaled(scale));
    }
  }
}

TEST_CASE("basic commutators") {
  auto c2 = basic_commutators(2, 2);
  REQUIRE(c2.size() == 1);
  CHECK(c2[0] == read_word("[a,b]", kAB));

  auto c1 = basic_commutators(2, 1);
  CHECK(c1.size() == 2);

  auto c3 = basic_commutators(2, 3);
  CHECK(std::find(c3.begin(), c3.end(), read_word("[a,[a,b]]", kAB)) != c3.end());
  for (const auto& w : c3) CHECK(gamma_member(w, 3, kAB));

  // spanned lattice ranks match the Witt formula
  CHECK(witt_rank(2, 2) == 1);
  CHECK(witt_rank(2, 3) == 2);
  CHECK(witt_rank(2, 4) == 3);
  CHECK(witt_rank(3, 3) == 8);

  for (int c = 2; c <= 4; ++c) {
    std::vector<HomogeneousVector> vecs;
    for (const auto& w : basic_commutators(2, c)) vecs.push_back(lie_component(w, c, kAB));
    CHECK(lattice_rank(vecs) == witt_rank(2, c));
  }
  std::vector<HomogeneousVector> vecs3;
  const Alphabet kABC = Alphabet::from_csv("a,b,c");
  for (const auto& w : basic_commutators(3, 3)) vecs3.push_back(lie_component(w, 3, kABC));
  CHECK(lattice_rank(vecs3) == witt_rank(3, 3));
}

TEST_CASE("series json") {
  std::string j = series_to_json_text(expand("[a,b]", 2));
  CHECK(j == R"({"c_max":2,"terms":[{"mono":[],"coef":"1"},{"mono":["a","b"],"coef":"1"},{"mono":["b","a"],"coef":"-1"}]})");
}
