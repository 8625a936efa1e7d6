#ifndef NILCERT_SUBDIRECT_HPP
#define NILCERT_SUBDIRECT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilcert/expr.hpp"
#include "nilcert/word.hpp"

namespace nilcert {

// Element of F_2^(1) x ... x F_2^(r): one reduced word per coordinate, the
// i-th over the two-letter alphabet {a_i, b_i}. Products of tuples with
// different r are rejected.
class Tuple {
public:
  explicit Tuple(int r);  // identity
  explicit Tuple(std::vector<ReducedWord> comps);

  int r() const { return static_cast<int>(comps_.size()); }
  const ReducedWord& comp(int i) const { return comps_.at(i); }  // 0-based
  const std::vector<ReducedWord>& comps() const { return comps_; }

  bool is_identity() const;
  Tuple inverse() const;
  Tuple pow(int64_t e) const;
  friend Tuple operator*(const Tuple& a, const Tuple& b);

  bool operator==(const Tuple& o) const { return comps_ == o.comps_; }
  size_t hash() const;

private:
  std::vector<ReducedWord> comps_;
};

struct TupleHash {
  size_t operator()(const Tuple& t) const { return t.hash(); }
};

// {a_i, b_i} for 1-based coordinate i.
Alphabet coordinate_alphabet(int i);

// "a1^2 ; 1 ; a3^-2" <-> Tuple
Tuple parse_tuple(std::string_view text, int r);
std::string tuple_to_text(const Tuple& t);

// The generating set X_r = Y_1 u ... u Y_r u Z: Y_i holds the weight-(r-1)
// bracket words in (a_i, b_i) embedded at coordinate i, and Z holds
//   z1 = (a_1, ..., a_r)        z2 = (b_1, ..., b_r)
//   z3 = (a_1, a_2^2, ..., a_r^r)  z4 = (b_1, b_2^2, ..., b_r^r).
struct GeneratorSystem {
  int r;
  std::vector<std::vector<Tuple>> Y;  // Y[i] belongs to coordinate i+1
  std::vector<Tuple> Z;               // z1..z4

  std::vector<Tuple> all() const;  // X_r in Y_1..Y_r, Z order
};

GeneratorSystem build_generators(int r);  // r >= 3

// Canonical projection onto the given 1-based coordinates (strictly
// increasing, within 1..r).
Tuple project(const Tuple& t, const std::vector<int>& indices);

// Witnesses x_{1,j} (2 <= j <= r-1) and y_{1,r}, each a word in Z with
//   p_1(x_{1,j}) = a_1^k, p_j(x_{1,j}) = 1,
//   p_1(y_{1,r}) = b_1^k, p_r(y_{1,r}) = 1,
// realized with k = lcm(1, ..., r-1) via x_{1,j} = (z1^j z3^-1)^{k/(j-1)}
// and y_{1,r} = (z2^r z4^-1)^{k/(r-1)}.
struct VspWitness {
  int r = 0;
  int64_t k = 0;
  std::vector<Tuple> x;          // x[j-2] = x_{1,j}
  Tuple y{1};
  std::vector<WordExpr> x_expr;  // over the alphabet {z1, z2, z3, z4}
  WordExpr y_expr = WordExpr::identity();

  int64_t max_expr_letters() const;
};

VspWitness build_vsp_witnesses(int r);

// Re-evaluates the Z-expressions and checks the projection conditions.
bool verify_vsp_witness(const VspWitness& w, const GeneratorSystem& gens);

// u_n = [x_{1,2}^n, [x_{1,3}^n, ..., [x_{1,r-1}^n, y_{1,r}^n]...]]: the word
// over the witness alphabet and its tuple value.
struct UWord {
  ReducedWord witness_word;  // over {x12, ..., x1<r-1>, y1<r>}
  Tuple value{1};
  int64_t letters = 0;           // reduced letter count of witness_word
  int64_t expanded_letters = 0;  // letter count after substituting Z-expressions
};

UWord build_u(int r, int64_t n);

struct WitnessIdentityReport {
  int r = 0;
  int64_t n = 0;
  int64_t k = 0;
  bool identity_holds = false;   // u_n value == (w_{kn}, 1, ..., 1)
  bool in_gamma_prev = false;    // w_{kn} in gamma_{r-1}
  bool not_in_gamma_r = false;   // w_{kn} not in gamma_r
  int64_t u_letters = 0;
  int64_t letter_bound = 0;      // 2^{2(r-1)} n
  double length_ratio = 0.0;     // u_letters / n

  bool passed() const {
    return identity_holds && in_gamma_prev && not_in_gamma_r && u_letters <= letter_bound;
  }
};

WitnessIdentityReport verify_witness_identity(int r, int64_t n);

// (g, 1, ..., 1) in H_r iff g in gamma_{r-1}; g is a word over {a_1, b_1}.
bool coordinate_membership(const ReducedWord& g, int r);

struct BfsBudget {
  int64_t max_states = 200000;
};

// Exact word length of h over X_r (generators and inverses), by
// bidirectional breadth-first search over reduced tuples; empty when the
// budget is exhausted before the distance is certified.
std::optional<int64_t> shortest_length_bfs(const Tuple& h, const GeneratorSystem& gens,
                                           const BfsBudget& budget = {});

}  // namespace nilcert

#endif
