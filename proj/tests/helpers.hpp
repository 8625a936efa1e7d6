#ifndef NILCERT_TEST_HELPERS_HPP
#define NILCERT_TEST_HELPERS_HPP

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "nilcert/word.hpp"

namespace nilcert::test {

// Independent reducer: repeatedly rescans for adjacent cancellations instead
// of using the stack algorithm under test.
inline std::vector<Letter> naive_reduce(std::vector<Letter> ls) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < ls.size(); ++i) {
      if (ls[i].gen == ls[i + 1].gen && ls[i].sign == -ls[i + 1].sign) {
        ls.erase(ls.begin() + i, ls.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  return ls;
}

// Upper unitriangular 3x3 integer matrices; a -> E12, b -> E23 factors
// through F_2/gamma_3 with kernel exactly gamma_3.
struct Heis {
  // entries (0,1), (0,2), (1,2)
  std::array<int64_t, 3> e{0, 0, 0};

  static Heis id() { return {}; }
  static Heis gen(uint32_t g, int sign) {
    Heis m;
    if (g == 0)
      m.e[0] = sign;
    else
      m.e[2] = sign;
    return m;
  }
  friend Heis operator*(const Heis& a, const Heis& b) {
    Heis r;
    r.e[0] = a.e[0] + b.e[0];
    r.e[2] = a.e[2] + b.e[2];
    r.e[1] = a.e[1] + b.e[1] + a.e[0] * b.e[2];
    return r;
  }
  bool operator==(const Heis& o) const { return e == o.e; }
};

inline Heis heis_eval(const ReducedWord& w) {
  Heis m;
  for (const Letter& l : w.letters()) m = m * Heis::gen(l.gen, l.sign);
  return m;
}

// Uniform reduced word of exactly the requested length over k generators.
inline ReducedWord random_reduced_word(std::mt19937& rng, size_t len, uint32_t k = 2) {
  std::vector<Letter> ls;
  std::uniform_int_distribution<uint32_t> gen_dist(0, k - 1);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  while (ls.size() < len) {
    Letter l{gen_dist(rng), static_cast<int8_t>(sign_dist(rng) ? 1 : -1)};
    if (!ls.empty() && ls.back().gen == l.gen && ls.back().sign == -l.sign) continue;
    ls.push_back(l);
  }
  return ReducedWord::reduce(ls);
}

// Exact area of a balanced word over <a, b | [a,b]>: trace the word as a
// grid loop and sum |winding number| over all unit cells. Each conjugated
// relator changes exactly one cell's winding by one, so this is the minimal
// number of conjugated relators, independently of any search.
inline int64_t grid_area(const ReducedWord& w) {
  struct HSeg {
    int64_t x, y;
    int dir;  // +1 rightward, -1 leftward
  };
  std::vector<HSeg> segs;
  int64_t x = 0, y = 0, min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  for (const Letter& l : w.letters()) {
    if (l.gen == 0) {
      segs.push_back({l.sign > 0 ? x : x - 1, y, l.sign});
      x += l.sign;
    } else {
      y += l.sign;
    }
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  }
  int64_t total = 0;
  for (int64_t i = min_x; i < max_x; ++i) {
    for (int64_t j = min_y; j < max_y; ++j) {
      int64_t winding = 0;  // ray upward from the cell centre (i+.5, j+.5)
      for (const HSeg& s : segs)
        if (s.x == i && s.y > j) winding -= s.dir;
      total += winding < 0 ? -winding : winding;
    }
  }
  return total;
}

// All reduced words of length exactly len over k generators.
inline void enumerate_reduced(size_t len, uint32_t k, std::vector<ReducedWord>& out,
                              std::vector<Letter>& cur) {
  if (cur.size() == len) {
    out.push_back(ReducedWord::reduce(cur));
    return;
  }
  for (uint32_t g = 0; g < k; ++g) {
    for (int8_t s : {int8_t{1}, int8_t{-1}}) {
      if (!cur.empty() && cur.back().gen == g && cur.back().sign == -s) continue;
      cur.push_back({g, s});
      enumerate_reduced(len, k, out, cur);
      cur.pop_back();
    }
  }
}

inline std::vector<ReducedWord> all_reduced_words_up_to(size_t max_len, uint32_t k = 2) {
  std::vector<ReducedWord> out;
  std::vector<Letter> cur;
  for (size_t len = 0; len <= max_len; ++len) enumerate_reduced(len, k, out, cur);
  return out;
}

}  // namespace nilcert::test

#endif
