#include "nilcert/subdirect.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "nilcert/parallel.hpp"
#include "nilcert/series.hpp"

namespace nilcert {

Tuple::Tuple(int r) {
  if (r < 1) throw std::invalid_argument("tuple: r must be >= 1");
  comps_.resize(r);
}

Tuple::Tuple(std::vector<ReducedWord> comps) : comps_(std::move(comps)) {
  if (comps_.empty()) throw std::invalid_argument("tuple: r must be >= 1");
}

bool Tuple::is_identity() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const ReducedWord& w) { return w.is_identity(); });
}

Tuple Tuple::inverse() const {
  std::vector<ReducedWord> out;
  out.reserve(comps_.size());
  for (const auto& w : comps_) out.push_back(w.inverse());
  return Tuple(std::move(out));
}

Tuple operator*(const Tuple& a, const Tuple& b) {
  if (a.r() != b.r())
    throw std::invalid_argument("tuple product: mismatched number of coordinates");
  std::vector<ReducedWord> out;
  out.reserve(a.comps_.size());
  for (size_t i = 0; i < a.comps_.size(); ++i) out.push_back(a.comps_[i] * b.comps_[i]);
  return Tuple(std::move(out));
}

Tuple Tuple::pow(int64_t e) const {
  Tuple base = e < 0 ? inverse() : *this;
  int64_t m = e < 0 ? -e : e;
  Tuple acc(r());
  for (int64_t i = 0; i < m; ++i) acc = acc * base;
  return acc;
}

size_t Tuple::hash() const {
  uint64_t h = 14695981039346656037ull;
  for (const auto& w : comps_) {
    h ^= w.hash();
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

Alphabet coordinate_alphabet(int i) {
  return Alphabet({"a" + std::to_string(i), "b" + std::to_string(i)});
}

Tuple parse_tuple(std::string_view text, int r) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (static_cast<int>(parts.size()) != r)
    throw std::invalid_argument("tuple: expected " + std::to_string(r) + " components");
  std::vector<ReducedWord> comps;
  for (int i = 0; i < r; ++i) comps.push_back(read_word(parts[i], coordinate_alphabet(i + 1)));
  return Tuple(std::move(comps));
}

std::string tuple_to_text(const Tuple& t) {
  std::string out;
  for (int i = 0; i < t.r(); ++i) {
    if (i) out += " ; ";
    out += word_to_text(t.comp(i), coordinate_alphabet(i + 1));
  }
  return out;
}

std::vector<Tuple> GeneratorSystem::all() const {
  std::vector<Tuple> out;
  for (const auto& yi : Y) out.insert(out.end(), yi.begin(), yi.end());
  out.insert(out.end(), Z.begin(), Z.end());
  return out;
}

GeneratorSystem build_generators(int r) {
  if (r < 3) throw std::invalid_argument("build_generators: r must be >= 3");
  GeneratorSystem g;
  g.r = r;
  std::vector<ReducedWord> brackets = basic_commutators(2, r - 1);
  for (int i = 0; i < r; ++i) {
    std::vector<Tuple> yi;
    for (const auto& w : brackets) {
      Tuple t(r);
      std::vector<ReducedWord> comps(r);
      comps[i] = w;
      yi.push_back(Tuple(std::move(comps)));
    }
    g.Y.push_back(std::move(yi));
  }
  for (int which = 0; which < 4; ++which) {
    std::vector<ReducedWord> comps;
    for (int i = 1; i <= r; ++i) {
      uint32_t gen = which % 2 == 0 ? 0u : 1u;  // a_i for z1/z3, b_i for z2/z4
      int64_t e = which < 2 ? 1 : i;
      comps.push_back(ReducedWord::generator_power(gen, e));
    }
    g.Z.push_back(Tuple(std::move(comps)));
  }
  return g;
}

Tuple project(const Tuple& t, const std::vector<int>& indices) {
  std::vector<ReducedWord> comps;
  int prev = 0;
  for (int i : indices) {
    if (i < 1 || i > t.r()) throw std::out_of_range("project: index out of range");
    if (i <= prev) throw std::invalid_argument("project: indices must be strictly increasing");
    prev = i;
    comps.push_back(t.comp(i - 1));
  }
  return Tuple(std::move(comps));
}

namespace {

struct TupleCtx {
  const std::vector<Tuple>* leaves;
  int r;
  Tuple one() const { return Tuple(r); }
  Tuple mul(const Tuple& a, const Tuple& b) const { return a * b; }
  Tuple inv(const Tuple& a) const { return a.inverse(); }
  Tuple leaf(uint32_t gen, int sign) const {
    Tuple t = leaves->at(gen);
    return sign < 0 ? t.inverse() : t;
  }
};

Alphabet witness_alphabet(int r) {
  std::vector<std::string> names;
  for (int j = 2; j <= r - 1; ++j) names.push_back("x1" + std::to_string(j));
  names.push_back("y1" + std::to_string(r));
  return Alphabet(std::move(names));
}

}  // namespace

int64_t VspWitness::max_expr_letters() const {
  int64_t m = y_expr.letter_count();
  for (const auto& e : x_expr) m = std::max(m, e.letter_count());
  return m;
}

VspWitness build_vsp_witnesses(int r) {
  if (r < 3) throw std::invalid_argument("build_vsp_witnesses: r must be >= 3");
  GeneratorSystem gens = build_generators(r);
  VspWitness w;
  w.r = r;
  w.k = 1;
  for (int64_t i = 2; i <= r - 1; ++i) w.k = std::lcm(w.k, i);

  TupleCtx ctx{&gens.Z, r};
  // z indices: z1 = 0, z2 = 1, z3 = 2, z4 = 3
  for (int j = 2; j <= r - 1; ++j) {
    WordExpr base = WordExpr::concat(
        {WordExpr::power(WordExpr::generator(0), j), WordExpr::power(WordExpr::generator(2), -1)});
    WordExpr e = WordExpr::power(std::move(base), w.k / (j - 1));
    w.x.push_back(e.eval(ctx));
    w.x_expr.push_back(std::move(e));
  }
  WordExpr ybase = WordExpr::concat(
      {WordExpr::power(WordExpr::generator(1), r), WordExpr::power(WordExpr::generator(3), -1)});
  w.y_expr = WordExpr::power(std::move(ybase), w.k / (r - 1));
  w.y = w.y_expr.eval(ctx);
  return w;
}

bool verify_vsp_witness(const VspWitness& w, const GeneratorSystem& gens) {
  if (w.r != gens.r || static_cast<int>(w.x.size()) != w.r - 2) return false;
  TupleCtx ctx{&gens.Z, gens.r};
  for (int j = 2; j <= w.r - 1; ++j) {
    const Tuple& x = w.x[j - 2];
    if (!(w.x_expr[j - 2].eval(ctx) == x)) return false;
    if (!(x.comp(0) == ReducedWord::generator_power(0, w.k))) return false;
    if (!x.comp(j - 1).is_identity()) return false;
  }
  if (!(w.y_expr.eval(ctx) == w.y)) return false;
  if (!(w.y.comp(0) == ReducedWord::generator_power(1, w.k))) return false;
  if (!w.y.comp(w.r - 1).is_identity()) return false;
  return true;
}

UWord build_u(int r, int64_t n) {
  if (r < 3) throw std::invalid_argument("build_u: r must be >= 3");
  if (n < 1) throw std::invalid_argument("build_u: n must be positive");
  VspWitness wit = build_vsp_witnesses(r);

  // [xi_2^n, [xi_3^n, ..., [xi_{r-1}^n, eta^n]...]] over the witness letters;
  // witness letter indices: 0..r-3 are x_{1,j}, r-2 is y_{1,r}.
  WordExpr e = WordExpr::power(WordExpr::generator(static_cast<uint32_t>(r - 2)), n);
  for (int j = r - 1; j >= 2; --j)
    e = WordExpr::commutator(WordExpr::power(WordExpr::generator(static_cast<uint32_t>(j - 2)), n),
                             std::move(e));

  UWord u;
  u.witness_word = eval_expr(e);
  u.letters = static_cast<int64_t>(u.witness_word.length());

  std::vector<Tuple> leaves = wit.x;
  leaves.push_back(wit.y);
  u.value = e.eval(TupleCtx{&leaves, r});

  int64_t expanded = 0;
  for (const Letter& l : u.witness_word.letters()) {
    const WordExpr& ex = l.gen < wit.x_expr.size() ? wit.x_expr[l.gen] : wit.y_expr;
    expanded += ex.letter_count();
  }
  u.expanded_letters = expanded;
  return u;
}

WitnessIdentityReport verify_witness_identity(int r, int64_t n) {
  WitnessIdentityReport rep;
  rep.r = r;
  rep.n = n;
  UWord u = build_u(r, n);
  VspWitness wit = build_vsp_witnesses(r);
  rep.k = wit.k;

  ReducedWord w = build_w(wit.k * n, r - 1);
  std::vector<ReducedWord> expect(r);
  expect[0] = w;
  rep.identity_holds = u.value == Tuple(std::move(expect));

  Alphabet X = coordinate_alphabet(1);
  rep.in_gamma_prev = gamma_member(w, r - 1, X);
  rep.not_in_gamma_r = !gamma_member(w, r, X);

  rep.u_letters = u.letters;
  rep.letter_bound = (int64_t{1} << (2 * (r - 1))) * n;
  rep.length_ratio = static_cast<double>(u.letters) / static_cast<double>(n);
  return rep;
}

bool coordinate_membership(const ReducedWord& g, int r) {
  if (r < 3) throw std::invalid_argument("coordinate_membership: r must be >= 3");
  return gamma_member(g, r - 1, coordinate_alphabet(1));
}

namespace {

// One BFS level: expands every frontier tuple by every move. Chunks are
// processed in parallel and merged in frontier order, so the discovered set
// is independent of the thread count.
std::vector<Tuple> expand_level(const std::vector<Tuple>& frontier,
                                const std::vector<Tuple>& moves,
                                std::unordered_map<Tuple, int32_t, TupleHash>& dist,
                                int32_t next_d) {
  const size_t n = frontier.size();
  std::vector<std::vector<Tuple>> produced(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (n >= 32)
#endif
  for (size_t i = 0; i < n; ++i) {
    produced[i].reserve(moves.size());
    for (const Tuple& m : moves) produced[i].push_back(frontier[i] * m);
  }
  std::vector<Tuple> next;
  for (auto& bucket : produced) {
    for (auto& t : bucket) {
      auto [it, inserted] = dist.emplace(std::move(t), next_d);
      if (inserted) next.push_back(it->first);
    }
  }
  return next;
}

}  // namespace

std::optional<int64_t> shortest_length_bfs(const Tuple& h, const GeneratorSystem& gens,
                                           const BfsBudget& budget) {
  if (h.r() != gens.r) throw std::invalid_argument("shortest_length_bfs: wrong tuple size");
  if (h.is_identity()) return 0;

  std::vector<Tuple> moves;
  for (const Tuple& g : gens.all()) {
    moves.push_back(g);
    moves.push_back(g.inverse());
  }

  std::unordered_map<Tuple, int32_t, TupleHash> dist_a, dist_b;
  std::vector<Tuple> front_a{Tuple(gens.r)}, front_b{h};
  dist_a.emplace(front_a[0], 0);
  dist_b.emplace(h, 0);
  int32_t da = 0, db = 0;
  int64_t best = std::numeric_limits<int64_t>::max();

  while (!front_a.empty() && !front_b.empty()) {
    if (best <= static_cast<int64_t>(da) + db) return best;
    if (static_cast<int64_t>(dist_a.size() + dist_b.size()) > budget.max_states)
      return std::nullopt;

    bool expand_a = front_a.size() <= front_b.size();
    auto& dist = expand_a ? dist_a : dist_b;
    auto& other = expand_a ? dist_b : dist_a;
    auto& front = expand_a ? front_a : front_b;
    int32_t& d = expand_a ? da : db;

    front = expand_level(front, moves, dist, d + 1);
    ++d;
    for (const Tuple& t : front) {
      auto it = other.find(t);
      if (it != other.end())
        best = std::min<int64_t>(best, static_cast<int64_t>(d) + it->second);
    }
  }
  return best == std::numeric_limits<int64_t>::max() ? std::nullopt
                                                     : std::optional<int64_t>(best);
}

}  // namespace nilcert
