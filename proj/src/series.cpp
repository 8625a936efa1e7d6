#include "nilcert/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "nilcert/parallel.hpp"

namespace nilcert {

TruncatedSeries::TruncatedSeries(int c_max, Alphabet alphabet)
    : c_max_(c_max), alphabet_(std::move(alphabet)) {
  if (c_max_ < 1) throw std::invalid_argument("series: truncation degree must be >= 1");
}

TruncatedSeries TruncatedSeries::one(int c_max, const Alphabet& alphabet) {
  TruncatedSeries s(c_max, alphabet);
  s.terms_.emplace(Monomial{}, BigInt(1));
  return s;
}

BigInt TruncatedSeries::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt() : it->second;
}

bool TruncatedSeries::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.empty() &&
         terms_.begin()->second == BigInt(1);
}

void TruncatedSeries::add_term(const Monomial& m, const BigInt& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(m.size()) > c_max_) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.c_max() != b.c_max())
    throw std::invalid_argument("series_mul: mismatched truncation degrees");
  if (!(a.alphabet() == b.alphabet()))
    throw std::invalid_argument("series_mul: mismatched alphabets");
  TruncatedSeries r(a.c_max(), a.alphabet());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (static_cast<int>(ma.size() + mb.size()) > a.c_max()) continue;
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

TruncatedSeries series_inv(const TruncatedSeries& s) {
  if (!(s.constant_term() == BigInt(1)))
    throw std::invalid_argument("series_inv: constant term must be 1");
  TruncatedSeries d = s;  // D = s - 1
  d.add_term({}, BigInt(-1));
  // Horner: inv = 1 - D*(1 - D*(... )) = sum (-D)^i
  TruncatedSeries inv = TruncatedSeries::one(s.c_max(), s.alphabet());
  for (int i = 0; i < s.c_max(); ++i) {
    TruncatedSeries t = series_mul(d, inv);
    inv = TruncatedSeries::one(s.c_max(), s.alphabet());
    for (const auto& [m, c] : t.terms()) inv.add_term(m, -c);
  }
  return inv;
}

namespace {

// acc * (1 + x) for sign +1, acc * (1 - x + x^2 - ...) for sign -1.
TruncatedSeries mul_letter(const TruncatedSeries& a, const Letter& l) {
  TruncatedSeries r = a;
  for (const auto& [m, c] : a.terms()) {
    Monomial ext = m;
    if (l.sign > 0) {
      if (static_cast<int>(m.size()) < a.c_max()) {
        ext.push_back(l.gen);
        r.add_term(ext, c);
      }
    } else {
      bool negate = true;
      for (int d = static_cast<int>(m.size()) + 1; d <= a.c_max(); ++d) {
        ext.push_back(l.gen);
        r.add_term(ext, negate ? -c : c);
        negate = !negate;
      }
    }
  }
  return r;
}

TruncatedSeries expand_range(const ReducedWord& w, size_t lo, size_t hi, int c_max,
                             const Alphabet& X) {
  TruncatedSeries acc = TruncatedSeries::one(c_max, X);
  for (size_t i = lo; i < hi; ++i) {
    if (w.at(i).gen >= X.size())
      throw std::invalid_argument("magnus_expand: letter outside alphabet");
    acc = mul_letter(acc, w.at(i));
  }
  return acc;
}

}  // namespace

TruncatedSeries magnus_expand_serial(const ReducedWord& w, int c_max, const Alphabet& X) {
  return expand_range(w, 0, w.length(), c_max, X);
}

TruncatedSeries magnus_expand(const ReducedWord& w, int c_max, const Alphabet& X) {
  const size_t n = w.length();
  const int threads = max_threads();
  if (threads <= 1 || n < 256) return magnus_expand_serial(w, c_max, X);

  const size_t chunks = std::min<size_t>(threads * 4, n / 64 + 1);
  std::vector<TruncatedSeries> part(chunks, TruncatedSeries::one(c_max, X));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (size_t c = 0; c < chunks; ++c) {
    size_t lo = n * c / chunks, hi = n * (c + 1) / chunks;
    part[c] = expand_range(w, lo, hi, c_max, X);
  }
  // series_mul is associative over exact integers, so combining the chunk
  // results in order reproduces the serial fold bit for bit.
  TruncatedSeries acc = TruncatedSeries::one(c_max, X);
  for (const auto& p : part) acc = series_mul(acc, p);
  return acc;
}

bool gamma_member(const ReducedWord& w, int c, const Alphabet& X) {
  if (c < 1) throw std::invalid_argument("gamma_member: c must be >= 1");
  if (c == 1) return true;
  return magnus_expand(w, c - 1, X).is_one();
}

BigInt HomogeneousVector::l1_norm() const {
  BigInt n;
  for (const auto& [m, c] : coeffs) n += c.abs();
  return n;
}

HomogeneousVector& HomogeneousVector::operator+=(const HomogeneousVector& o) {
  for (const auto& [m, c] : o.coeffs) {
    auto [it, inserted] = coeffs.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs.erase(it);
    }
  }
  return *this;
}

HomogeneousVector HomogeneousVector::operator-() const {
  HomogeneousVector r;
  r.degree = degree;
  for (const auto& [m, c] : coeffs) r.coeffs.emplace(m, -c);
  return r;
}

HomogeneousVector HomogeneousVector::scaled(const BigInt& f) const {
  HomogeneousVector r;
  r.degree = degree;
  if (f.is_zero()) return r;
  for (const auto& [m, c] : coeffs) r.coeffs.emplace(m, c * f);
  return r;
}

HomogeneousVector lie_component(const ReducedWord& w, int c, const Alphabet& X) {
  if (c < 1) throw std::invalid_argument("lie_component: c must be >= 1");
  if (!gamma_member(w, c, X))
    throw std::domain_error("lie_component: word is not in gamma_c");
  TruncatedSeries s = magnus_expand(w, c, X);
  HomogeneousVector v;
  v.degree = c;
  for (const auto& [m, coef] : s.terms())
    if (static_cast<int>(m.size()) == c) v.coeffs.emplace(m, coef);
  return v;
}

std::vector<ReducedWord> basic_commutators(int k, int c) {
  if (k < 1 || c < 1) throw std::invalid_argument("basic_commutators: need k >= 1, c >= 1");
  std::vector<ReducedWord> out;
  std::unordered_set<ReducedWord, ReducedWordHash> seen;
  std::vector<uint32_t> idx(c, 0);
  for (;;) {
    // right-fold: [x_{i_1}, [x_{i_2}, ..., x_{i_c}]...]
    ReducedWord w = ReducedWord::generator(idx[c - 1]);
    for (int j = c - 2; j >= 0; --j)
      w = ReducedWord::commutator(ReducedWord::generator(idx[j]), w);
    if (!w.is_identity() && !seen.count(w) && !seen.count(w.inverse())) {
      seen.insert(w);
      out.push_back(w);
    }
    int pos = c - 1;
    while (pos >= 0 && idx[pos] + 1 == static_cast<uint32_t>(k)) idx[pos--] = 0;
    if (pos < 0) break;
    ++idx[pos];
  }
  return out;
}

int64_t witt_rank(int64_t k, int c) {
  auto mobius = [](int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
      }
    }
    if (n > 1) m = -m;
    return m;
  };
  int64_t sum = 0;
  for (int d = 1; d <= c; ++d) {
    if (c % d != 0) continue;
    int64_t pw = 1;
    for (int i = 0; i < c / d; ++i) pw *= k;
    sum += mobius(d) * pw;
  }
  return sum / c;
}

int64_t lattice_rank(const std::vector<HomogeneousVector>& vecs) {
  if (vecs.empty()) return 0;
  // Column index per monomial.
  std::map<Monomial, size_t, MonomialLess> cols;
  for (const auto& v : vecs)
    for (const auto& [m, c] : v.coeffs) cols.emplace(m, 0);
  size_t nc = 0;
  for (auto& [m, i] : cols) i = nc++;

  std::vector<std::vector<int64_t>> a(vecs.size(), std::vector<int64_t>(nc, 0));
  for (size_t r = 0; r < vecs.size(); ++r)
    for (const auto& [m, c] : vecs[r].coeffs) a[r][cols[m]] = c.to_int64();

  // Fraction-free (Bareiss) elimination; entries stay equal to minors of the
  // original matrix, which are tiny for bracket vectors.
  size_t rank = 0;
  int64_t prev = 1;
  for (size_t col = 0; col < nc && rank < a.size(); ++col) {
    size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (size_t r = rank + 1; r < a.size(); ++r) {
      for (size_t c2 = col + 1; c2 < nc; ++c2)
        a[r][c2] = (a[rank][col] * a[r][c2] - a[r][col] * a[rank][c2]) / prev;
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return static_cast<int64_t>(rank);
}

std::string series_to_json_text(const TruncatedSeries& s) {
  nlohmann::ordered_json j;
  j["c_max"] = s.c_max();
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [m, c] : s.terms()) {
    nlohmann::ordered_json term;
    term["mono"] = nlohmann::ordered_json::array();
    for (uint32_t g : m) term["mono"].push_back(s.alphabet().name(g));
    term["coef"] = c.to_decimal();
    j["terms"].push_back(term);
  }
  return j.dump();
}

}  // namespace nilcert
