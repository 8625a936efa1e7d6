#ifndef NILCERT_SERIES_HPP
#define NILCERT_SERIES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nilcert/bigint.hpp"
#include "nilcert/word.hpp"

namespace nilcert {

// Noncommutative monomial: sequence of generator indices; degree = length.
using Monomial = std::vector<uint32_t>;

// Graded lexicographic order; gives series a canonical term order.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Integer polynomial in noncommuting variables, truncated at degree c_max.
// The constant term is the coefficient of the empty monomial. No zero
// coefficients are stored.
class TruncatedSeries {
public:
  TruncatedSeries(int c_max, Alphabet alphabet);
  static TruncatedSeries one(int c_max, const Alphabet& alphabet);

  int c_max() const { return c_max_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::map<Monomial, BigInt, MonomialLess>& terms() const { return terms_; }

  BigInt coeff(const Monomial& m) const;
  BigInt constant_term() const { return coeff({}); }
  bool is_one() const;

  // Accumulates c into the coefficient of m; drops the term if it becomes 0.
  void add_term(const Monomial& m, const BigInt& c);

  bool operator==(const TruncatedSeries& o) const {
    return c_max_ == o.c_max_ && alphabet_ == o.alphabet_ && terms_ == o.terms_;
  }

private:
  int c_max_;
  Alphabet alphabet_;
  std::map<Monomial, BigInt, MonomialLess> terms_;
};

// Product with all terms of degree > c_max dropped. Throws on mismatched
// truncation degree or alphabet.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

// Inverse of s = 1 + D as sum_i (-D)^i truncated. Throws unless the constant
// term is 1.
TruncatedSeries series_inv(const TruncatedSeries& s);

// Magnus expansion: x |-> 1 + x, x^-1 |-> 1 - x + x^2 - ...; multiplicative
// over concatenation. The default entry point splits long words into chunks
// and folds them in parallel; the serial fold is kept as the reference.
TruncatedSeries magnus_expand(const ReducedWord& w, int c_max, const Alphabet& X);
TruncatedSeries magnus_expand_serial(const ReducedWord& w, int c_max, const Alphabet& X);

// w in gamma_c(F)? Decided by vanishing of all expansion terms of degree
// 1..c-1; always true for c = 1.
bool gamma_member(const ReducedWord& w, int c, const Alphabet& X);

// Degree-c slice of a series: the image of gamma_c / gamma_{c+1} in degree-c
// tensors.
struct HomogeneousVector {
  int degree = 0;
  std::map<Monomial, BigInt, MonomialLess> coeffs;

  BigInt l1_norm() const;
  HomogeneousVector& operator+=(const HomogeneousVector& o);
  HomogeneousVector operator-() const;
  HomogeneousVector scaled(const BigInt& f) const;
  bool operator==(const HomogeneousVector& o) const {
    return degree == o.degree && coeffs == o.coeffs;
  }
};

// Requires gamma_member(w, c); throws std::domain_error otherwise.
HomogeneousVector lie_component(const ReducedWord& w, int c, const Alphabet& X);

// All weight-c brackets [x_{i_1}, [x_{i_2}, ..., x_{i_c}]...] on k
// generators, freely reduced, trivial ones dropped, deduplicated up to
// inversion. For c = 1 these are the generators themselves.
std::vector<ReducedWord> basic_commutators(int k, int c);

// Number of degree-c basis elements of the free Lie ring on k generators:
// (1/c) * sum_{d | c} mu(d) k^{c/d}.
int64_t witt_rank(int64_t k, int c);

// Rank of the lattice spanned by the given vectors (must share a degree).
int64_t lattice_rank(const std::vector<HomogeneousVector>& vecs);

std::string series_to_json_text(const TruncatedSeries& s);

}  // namespace nilcert

#endif
