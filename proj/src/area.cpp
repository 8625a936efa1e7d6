#include "nilcert/area.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "nilcert/expr.hpp"
#include "nilcert/parallel.hpp"

namespace nilcert {

int64_t GroupPresentation::max_relator_length() const {
  int64_t m = 0;
  for (const auto& r : relators) m = std::max<int64_t>(m, r.length());
  return m;
}

GroupPresentation gamma_presentation(int k, int c) {
  if (k < 2 || c < 2) throw std::invalid_argument("gamma_presentation: need k >= 2, c >= 2");
  if (k > 26) throw std::invalid_argument("gamma_presentation: at most 26 generators");
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return GroupPresentation{Alphabet(std::move(names)), basic_commutators(k, c)};
}

bool verify_filling(const ReducedWord& v, const FillingCertificate& cert,
                    const GroupPresentation& p) {
  ReducedWord prod;
  for (const FillingStep& s : cert) {
    if (s.relator < 0 || static_cast<size_t>(s.relator) >= p.relators.size())
      throw std::out_of_range("verify_filling: relator index out of range");
    ReducedWord r = p.relators[s.relator];
    if (s.sign < 0) r = r.inverse();
    prod = prod * r.conjugated_by(s.conjugator);
  }
  return prod == v;
}

BigInt area_lower_bound(const ReducedWord& v, const GroupPresentation& p, int c) {
  if (!gamma_member(v, c, p.alphabet))
    throw std::domain_error("area_lower_bound: word is not in gamma_c");
  BigInt max_norm;
  for (const auto& r : p.relators) {
    if (!gamma_member(r, c, p.alphabet))
      throw std::domain_error("area_lower_bound: relator is not in gamma_c");
    BigInt n = lie_component(r, c, p.alphabet).l1_norm();
    if (max_norm < n) max_norm = n;
  }
  if (max_norm.is_zero())
    throw std::domain_error("area_lower_bound: all relators have vanishing degree-c part");
  BigInt num = lie_component(v, c, p.alphabet).l1_norm();
  return ceil_div(num, max_norm.to_u32());
}

namespace {

// [x_j^s1, x_i^s2] as a conjugate of r = [x_i, x_j] (i < j): returns the
// conjugator and sign such that the commutator equals theta r^sign theta^-1.
std::pair<ReducedWord, int8_t> swap_commutator(uint32_t j, int8_t s1, uint32_t i, int8_t s2) {
  ReducedWord xj = ReducedWord::generator(j), xi = ReducedWord::generator(i);
  if (s1 > 0 && s2 > 0) return {ReducedWord{}, -1};
  if (s1 < 0 && s2 > 0) return {xj.inverse(), +1};
  if (s1 > 0 && s2 < 0) return {xi.inverse(), +1};
  return {xj.inverse() * xi.inverse(), -1};
}

}  // namespace

FillingCertificate abelian_fill(const ReducedWord& v, int k) {
  std::vector<int64_t> sums(k, 0);
  for (const Letter& l : v.letters()) {
    if (l.gen >= static_cast<uint32_t>(k))
      throw std::invalid_argument("abelian_fill: letter outside alphabet");
    sums[l.gen] += l.sign;
  }
  for (int64_t s : sums)
    if (s != 0) throw std::domain_error("abelian_fill: word has nonzero exponent sum");

  // Relator index of [x_i, x_j], i < j, in gamma_presentation(k, 2) order.
  auto rel_index = [k](uint32_t i, uint32_t j) {
    int32_t idx = 0;
    for (uint32_t a = 0; a < i; ++a) idx += static_cast<int32_t>(k - 1 - a);
    return idx + static_cast<int32_t>(j - i - 1);
  };

  FillingCertificate steps;
  ReducedWord w = v;
  for (;;) {
    // leftmost adjacent inversion
    size_t p = 0;
    bool found = false;
    for (; p + 1 < w.length(); ++p) {
      if (w.at(p).gen > w.at(p + 1).gen) {
        found = true;
        break;
      }
    }
    if (!found) break;
    Letter u = w.at(p), x = w.at(p + 1);
    // The commutator [u^-1, x^-1] repairs the swap: w = w' * beta^-1 [u^-1,x^-1] beta.
    auto [theta0, sign] = swap_commutator(u.gen, static_cast<int8_t>(-u.sign), x.gen,
                                          static_cast<int8_t>(-x.sign));
    ReducedWord beta = w.suffix(p + 2);
    steps.push_back({beta.inverse() * theta0, rel_index(x.gen, u.gen), sign});
    w = w.prefix(p) * ReducedWord::generator(x.gen, x.sign) *
        ReducedWord::generator(u.gen, u.sign) * w.suffix(p + 2);
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

namespace {

struct Move {
  ReducedWord insertion;  // cyclic rotation of r^sign
  ReducedWord conj_piece; // rho^-1 with insertion = rho^-1 r^sign rho
  int32_t relator;
  int8_t sign;
};

std::vector<Move> enumerate_moves(const GroupPresentation& p) {
  std::vector<Move> moves;
  std::vector<ReducedWord> seen;
  for (int32_t ri = 0; ri < static_cast<int32_t>(p.relators.size()); ++ri) {
    for (int8_t sign : {int8_t{1}, int8_t{-1}}) {
      ReducedWord r = sign > 0 ? p.relators[ri] : p.relators[ri].inverse();
      for (size_t cut = 0; cut < std::max<size_t>(r.length(), 1); ++cut) {
        ReducedWord rho = r.prefix(cut);
        ReducedWord ins = r.suffix(cut) * rho;
        if (std::find(seen.begin(), seen.end(), ins) != seen.end()) continue;
        seen.push_back(ins);
        moves.push_back({ins, rho.inverse(), ri, sign});
      }
    }
  }
  return moves;
}

// Largest c <= cap such that all relators and v lie in gamma_c.
int heuristic_degree(const ReducedWord& v, const GroupPresentation& p, int cap = 8) {
  int c = 1;
  for (int cand = 2; cand <= cap; ++cand) {
    bool ok = gamma_member(v, cand, p.alphabet);
    for (size_t i = 0; ok && i < p.relators.size(); ++i)
      ok = gamma_member(p.relators[i], cand, p.alphabet);
    if (!ok) break;
    c = cand;
  }
  return c;
}

constexpr int64_t kInfCost = std::numeric_limits<int64_t>::max() / 4;

struct SearchNode {
  ReducedWord word;
  int64_t g;
  int32_t parent;     // index into node arena, -1 for root
  int32_t move;       // move applied to reach this node
  int32_t position;   // insertion position in the parent word
};

}  // namespace

std::optional<AreaBoundReport> brute_force_area(const ReducedWord& v,
                                                const GroupPresentation& p,
                                                const SearchBudget& budget) {
  const int64_t conj_cap = budget.conj_cap >= 0 ? budget.conj_cap
                                                : static_cast<int64_t>(v.length());
  const int64_t max_len = budget.max_word_len >= 0
                              ? budget.max_word_len
                              : static_cast<int64_t>(v.length()) + 2 * p.max_relator_length();

  const int c = heuristic_degree(v, p);
  BigInt max_norm;
  for (const auto& r : p.relators) {
    BigInt n = lie_component(r, c, p.alphabet).l1_norm();
    if (max_norm < n) max_norm = n;
  }
  const uint32_t norm_div = max_norm.is_zero() ? 0 : max_norm.to_u32();

  // Counting bound on the defect. Every reachable defect stays in gamma_c
  // (v is, and each move multiplies by a conjugate of a relator), so only
  // the degree-c slice of the expansion is ever nonzero below c.
  auto heuristic = [&](const ReducedWord& d) -> int64_t {
    TruncatedSeries s = magnus_expand_serial(d, c, p.alphabet);
    BigInt n;
    for (const auto& [m, coef] : s.terms())
      if (static_cast<int>(m.size()) == c) n += coef.abs();
    if (norm_div == 0) return n.is_zero() ? 0 : kInfCost;
    return ceil_div(n, norm_div).to_int64();
  };

  if (v.is_identity()) {
    return AreaBoundReport{v, BigInt(0), 0, FillingCertificate{}, true};
  }

  const std::vector<Move> moves = enumerate_moves(p);
  if (moves.empty()) return std::nullopt;

  std::vector<SearchNode> arena;
  std::unordered_map<ReducedWord, int64_t, ReducedWordHash> best_g;

  struct OpenEntry {
    int64_t f;
    int64_t h;
    int32_t node;
  };
  auto cmp = [&arena](const OpenEntry& a, const OpenEntry& b) {
    if (a.f != b.f) return a.f > b.f;
    const ReducedWord& wa = arena[a.node].word;
    const ReducedWord& wb = arena[b.node].word;
    if (wa.length() != wb.length()) return wa.length() > wb.length();
    if (!(wa == wb)) return wb < wa;
    return arena[a.node].g > arena[b.node].g;
  };
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, decltype(cmp)> open(cmp);

  const int64_t h0 = heuristic(v);
  if (h0 >= kInfCost) return std::nullopt;
  arena.push_back({v, 0, -1, -1, -1});
  best_g.emplace(v, 0);
  open.push({h0, h0, 0});

  struct Candidate {
    ReducedWord word;
    int64_t h = kInfCost;
    int32_t move = -1;
    int32_t position = -1;
    bool ok = false;
  };

  int64_t expansions = 0;
  while (!open.empty()) {
    OpenEntry top = open.top();
    open.pop();
    const SearchNode node = arena[top.node];
    auto it = best_g.find(node.word);
    if (it != best_g.end() && it->second < node.g) continue;  // stale entry

    if (node.word.is_identity()) {
      // reconstruct: certificate steps are the path moves with flipped signs
      FillingCertificate cert;
      int32_t cur = top.node;
      while (arena[cur].parent >= 0) {
        const SearchNode& n = arena[cur];
        const SearchNode& par = arena[n.parent];
        const Move& m = moves[n.move];
        ReducedWord theta = par.word.prefix(n.position) * m.conj_piece;
        cert.push_back({theta, m.relator, static_cast<int8_t>(-m.sign)});
        cur = n.parent;
      }
      std::reverse(cert.begin(), cert.end());
      if (!verify_filling(v, cert, p))
        throw std::logic_error("brute_force_area: produced certificate failed verification");
      AreaBoundReport rep;
      rep.word = v;
      rep.upper_bound = node.g;
      rep.lower_bound = BigInt(node.g);
      rep.certificate = std::move(cert);
      rep.exact = true;
      return rep;
    }

    if (++expansions > budget.max_nodes) return std::nullopt;

    // All (position, move) insertions; heuristics evaluated in parallel,
    // results merged in fixed order.
    const int64_t npos = static_cast<int64_t>(node.word.length()) + 1;
    const int64_t total = npos * static_cast<int64_t>(moves.size());
    std::vector<Candidate> cands(total);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (total >= 64)
#endif
    for (int64_t ji = 0; ji < total; ++ji) {
      const int32_t pos = static_cast<int32_t>(ji / moves.size());
      const int32_t mi = static_cast<int32_t>(ji % moves.size());
      const Move& m = moves[mi];
      ReducedWord theta = node.word.prefix(pos) * m.conj_piece;
      if (static_cast<int64_t>(theta.length()) > conj_cap) continue;
      ReducedWord next = node.word.prefix(pos) * m.insertion * node.word.suffix(pos);
      if (static_cast<int64_t>(next.length()) > max_len) continue;
      Candidate& cd = cands[ji];
      cd.word = std::move(next);
      cd.h = heuristic(cd.word);
      cd.move = mi;
      cd.position = pos;
      cd.ok = cd.h < kInfCost;
    }
    for (int64_t ji = 0; ji < total; ++ji) {
      Candidate& cd = cands[ji];
      if (!cd.ok) continue;
      const int64_t g2 = node.g + 1;
      auto [bit, inserted] = best_g.emplace(cd.word, g2);
      if (!inserted) {
        if (bit->second <= g2) continue;
        bit->second = g2;
      }
      arena.push_back({std::move(cd.word), g2, top.node, cd.move, cd.position});
      open.push({g2 + cd.h, cd.h, static_cast<int32_t>(arena.size() - 1)});
    }
  }
  return std::nullopt;
}

std::string certificate_to_json_text(const ReducedWord& v, const FillingCertificate& cert,
                                     const GroupPresentation& p) {
  nlohmann::ordered_json j;
  j["presentation"]["alphabet"] = p.alphabet.symbols();
  j["presentation"]["relators"] = nlohmann::ordered_json::array();
  for (const auto& r : p.relators)
    j["presentation"]["relators"].push_back(word_to_text(r, p.alphabet));
  j["word"] = word_to_text(v, p.alphabet);
  j["steps"] = nlohmann::ordered_json::array();
  for (const FillingStep& s : cert) {
    nlohmann::ordered_json step;
    step["conj"] = word_to_text(s.conjugator, p.alphabet);
    step["rel"] = s.relator;
    step["sign"] = static_cast<int>(s.sign);
    j["steps"].push_back(step);
  }
  return j.dump();
}

ParsedCertificate certificate_from_json_text(std::string_view json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  std::vector<std::string> names = j.at("presentation").at("alphabet").get<std::vector<std::string>>();
  Alphabet X(names);
  std::vector<ReducedWord> relators;
  for (const auto& rt : j.at("presentation").at("relators"))
    relators.push_back(read_word(rt.get<std::string>(), X));
  GroupPresentation p{X, std::move(relators)};
  ReducedWord v = read_word(j.at("word").get<std::string>(), X);
  FillingCertificate cert;
  for (const auto& st : j.at("steps")) {
    FillingStep s;
    s.conjugator = read_word(st.at("conj").get<std::string>(), X);
    s.relator = st.at("rel").get<int32_t>();
    int sg = st.at("sign").get<int>();
    if (sg != 1 && sg != -1) throw std::invalid_argument("certificate: sign must be +-1");
    s.sign = static_cast<int8_t>(sg);
    cert.push_back(std::move(s));
  }
  return ParsedCertificate{std::move(p), std::move(v), std::move(cert)};
}

}  // namespace nilcert
