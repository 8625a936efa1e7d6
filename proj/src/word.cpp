#include "nilcert/word.hpp"

#include <cctype>
#include <stdexcept>

namespace nilcert {

namespace {

bool valid_symbol(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("alphabet: no symbols");
  for (size_t i = 0; i < symbols_.size(); ++i) {
    if (!valid_symbol(symbols_[i]))
      throw std::invalid_argument("alphabet: invalid symbol '" + symbols_[i] + "'");
    for (size_t j = i + 1; j < symbols_.size(); ++j)
      if (symbols_[i] == symbols_[j])
        throw std::invalid_argument("alphabet: duplicate symbol '" + symbols_[i] + "'");
  }
}

Alphabet Alphabet::from_csv(std::string_view csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return Alphabet(std::move(out));
}

std::optional<uint32_t> Alphabet::index(std::string_view name) const {
  for (uint32_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == name) return i;
  return std::nullopt;
}

ReducedWord ReducedWord::reduce(std::span<const Letter> letters) {
  ReducedWord w;
  w.letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    if (!w.letters_.empty() && w.letters_.back() == l.inverse())
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

ReducedWord ReducedWord::generator(uint32_t gen, int sign) {
  ReducedWord w;
  w.letters_.push_back({gen, static_cast<int8_t>(sign < 0 ? -1 : 1)});
  return w;
}

ReducedWord ReducedWord::generator_power(uint32_t gen, int64_t exp) {
  ReducedWord w;
  int8_t s = exp < 0 ? -1 : 1;
  for (int64_t i = 0; i < (exp < 0 ? -exp : exp); ++i) w.letters_.push_back({gen, s});
  return w;
}

ReducedWord ReducedWord::inverse() const {
  ReducedWord w;
  w.letters_.reserve(letters_.size());
  for (size_t i = letters_.size(); i-- > 0;) w.letters_.push_back(letters_[i].inverse());
  return w;
}

ReducedWord operator*(const ReducedWord& a, const ReducedWord& b) {
  ReducedWord w = a;
  for (const Letter& l : b.letters_) {
    if (!w.letters_.empty() && w.letters_.back() == l.inverse())
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

ReducedWord ReducedWord::pow(int64_t e) const {
  ReducedWord base = e < 0 ? inverse() : *this;
  int64_t m = e < 0 ? -e : e;
  ReducedWord r;
  for (int64_t i = 0; i < m; ++i) r = r * base;
  return r;
}

ReducedWord ReducedWord::prefix(size_t n) const {
  ReducedWord w;
  w.letters_.assign(letters_.begin(), letters_.begin() + std::min(n, letters_.size()));
  return w;
}

ReducedWord ReducedWord::suffix(size_t n) const {
  ReducedWord w;
  if (n < letters_.size()) w.letters_.assign(letters_.begin() + n, letters_.end());
  return w;
}

ReducedWord ReducedWord::conjugated_by(const ReducedWord& g) const {
  return g * *this * g.inverse();
}

ReducedWord ReducedWord::commutator(const ReducedWord& u, const ReducedWord& v) {
  return u * v * u.inverse() * v.inverse();
}

bool ReducedWord::is_power_of(uint32_t gen) const {
  for (const Letter& l : letters_)
    if (l.gen != gen) return false;
  return true;
}

bool ReducedWord::operator<(const ReducedWord& o) const {
  if (letters_.size() != o.letters_.size()) return letters_.size() < o.letters_.size();
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (!(letters_[i] == o.letters_[i])) return letters_[i] < o.letters_[i];
  }
  return false;
}

size_t ReducedWord::hash() const {
  uint64_t h = 1469598103934665603ull;
  for (const Letter& l : letters_) {
    uint64_t v = (static_cast<uint64_t>(l.gen) << 1) | (l.sign > 0 ? 1u : 0u);
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<size_t>(h);
}

std::string word_to_text(const ReducedWord& w, const Alphabet& X) {
  if (w.is_identity()) return "1";
  std::string out;
  size_t i = 0;
  const auto& ls = w.letters();
  while (i < ls.size()) {
    size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    int64_t run = static_cast<int64_t>(j - i) * ls[i].sign;
    if (!out.empty()) out += ' ';
    out += X.name(ls[i].gen);
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

ReducedWord build_w(int64_t n, int m, uint32_t a, uint32_t b) {
  if (m < 2) throw std::invalid_argument("build_w: need at least two entries (m >= 2)");
  if (n < 1) throw std::invalid_argument("build_w: n must be positive");
  if (a == b) throw std::invalid_argument("build_w: generators must differ");
  ReducedWord an = ReducedWord::generator_power(a, n);
  ReducedWord w = ReducedWord::generator_power(b, n);
  for (int i = 0; i < m - 1; ++i) w = ReducedWord::commutator(an, w);
  return w;
}

CommutatorLengthReport check_commutator_length(int64_t n, const ReducedWord& g, uint32_t a) {
  if (n < 1) throw std::invalid_argument("check_commutator_length: n must be positive");
  ReducedWord c = ReducedWord::commutator(ReducedWord::generator_power(a, n), g);
  CommutatorLengthReport r;
  r.length = static_cast<int64_t>(c.length());
  r.bound_holds = r.length >= 2 * n + 2;
  r.asserted = !g.is_power_of(a);
  return r;
}

}  // namespace nilcert
