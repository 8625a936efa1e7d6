#include "nilcert/fibre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "nilcert/parallel.hpp"
#include "nilcert/series.hpp"

namespace nilcert {

namespace {

std::vector<ReducedWord> dedup(std::vector<ReducedWord> ws) {
  std::vector<ReducedWord> out;
  for (auto& w : ws)
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
  return out;
}

std::vector<int32_t> containment_map(const std::vector<ReducedWord>& sub,
                                     const std::vector<ReducedWord>& super,
                                     const Alphabet& X, const char* which) {
  std::vector<int32_t> idx;
  for (const auto& w : sub) {
    auto it = std::find(super.begin(), super.end(), w);
    if (it == super.end())
      throw std::invalid_argument(std::string("make_fibre_setup: relator '") +
                                  word_to_text(w, X) + "' of " + which + " is missing from T");
    idx.push_back(static_cast<int32_t>(it - super.begin()));
  }
  return idx;
}

}  // namespace

FibreSetup make_fibre_setup(std::vector<ReducedWord> R, std::vector<ReducedWord> S,
                            std::vector<ReducedWord> T, Alphabet X) {
  FibreSetup s{X, GroupPresentation{X, {}}, GroupPresentation{X, {}}, GroupPresentation{X, {}},
               0, {}, {}};
  s.P1.relators = dedup(std::move(R));
  s.P2.relators = dedup(std::move(S));
  s.PQ.relators = dedup(std::move(T));
  for (const auto& list : {&s.P1.relators, &s.P2.relators, &s.PQ.relators})
    for (const auto& w : *list)
      if (w.is_identity())
        throw std::invalid_argument("make_fibre_setup: trivial relator");
  s.r_in_t = containment_map(s.P1.relators, s.PQ.relators, X, "R");
  s.s_in_t = containment_map(s.P2.relators, s.PQ.relators, X, "S");
  s.C = s.PQ.max_relator_length();
  return s;
}

FibreWord FibreWord::from_diagonal(const ReducedWord& w) {
  FibreWord f;
  for (const Letter& l : w.letters()) f.letters_.push_back({false, l.gen, l.sign});
  return f;
}

FibreWord FibreWord::relator_letter(uint32_t index, int sign) {
  FibreWord f;
  f.letters_.push_back({true, index, static_cast<int8_t>(sign < 0 ? -1 : 1)});
  return f;
}

int64_t FibreWord::relator_letter_count() const {
  int64_t q = 0;
  for (const auto& l : letters_) q += l.relator ? 1 : 0;
  return q;
}

FibreWord operator*(const FibreWord& a, const FibreWord& b) {
  FibreWord f = a;
  for (const FibreLetter& l : b.letters_) {
    if (!f.letters_.empty() && f.letters_.back() == l.inverse())
      f.letters_.pop_back();
    else
      f.letters_.push_back(l);
  }
  return f;
}

FibreWord FibreWord::inverse() const {
  FibreWord f;
  for (size_t i = letters_.size(); i-- > 0;) f.letters_.push_back(letters_[i].inverse());
  return f;
}

std::pair<ReducedWord, ReducedWord> eval_fibre_word(const FibreWord& w, const FibreSetup& s) {
  ReducedWord g1, g2;
  for (const FibreLetter& l : w.letters()) {
    if (l.relator) {
      if (l.index >= s.PQ.relators.size())
        throw std::out_of_range("eval_fibre_word: relator letter out of range");
      ReducedWord t = s.PQ.relators[l.index];
      if (l.sign < 0) t = t.inverse();
      g1 = g1 * t;
    } else {
      if (l.index >= s.X.size())
        throw std::out_of_range("eval_fibre_word: diagonal letter out of range");
      ReducedWord x = ReducedWord::generator(l.index, l.sign);
      g1 = g1 * x;
      g2 = g2 * x;
    }
  }
  return {std::move(g1), std::move(g2)};
}

std::optional<FillingCertificate> FreeFillingOracle::fill(const ReducedWord& v) const {
  if (v.is_identity()) return FillingCertificate{};
  return std::nullopt;
}

std::optional<FillingCertificate> AbelianFillingOracle::fill(const ReducedWord& v) const {
  std::vector<int64_t> sums(k_, 0);
  for (const Letter& l : v.letters()) {
    if (l.gen >= static_cast<uint32_t>(k_)) return std::nullopt;
    sums[l.gen] += l.sign;
  }
  for (int64_t s : sums)
    if (s != 0) return std::nullopt;
  return abelian_fill(v, k_);
}

std::optional<FillingCertificate> SearchFillingOracle::fill(const ReducedWord& v) const {
  auto rep = brute_force_area(v, p_, budget_);
  if (!rep || !rep->certificate) return std::nullopt;
  return rep->certificate;
}

namespace {

void require_presents(const FillingOracle& oracle, const GroupPresentation& p,
                      const char* which) {
  if (!(oracle.presentation().alphabet == p.alphabet) ||
      !(oracle.presentation().relators == p.relators))
    throw std::invalid_argument(std::string("oracle does not present ") + which);
}

}  // namespace

FibreWord rewrite_012(const ReducedWord& u, const ReducedWord& v, const FibreSetup& s,
                      const FillingOracle& q_filler) {
  require_presents(q_filler, s.PQ, "Q");
  ReducedWord w_tilde = u * v.inverse();
  auto cert = q_filler.fill(w_tilde);
  if (!cert) {
    if (q_filler.exact_on_failure())
      throw std::domain_error("rewrite_012: (u, v) is not in the fibre product");
    throw BudgetExhausted("rewrite_012: filling oracle ran out of budget");
  }
  FibreWord out;
  for (const FillingStep& st : *cert) {
    out = out * FibreWord::from_diagonal(st.conjugator) *
          FibreWord::relator_letter(static_cast<uint32_t>(st.relator), st.sign) *
          FibreWord::from_diagonal(st.conjugator.inverse());
  }
  out = out * FibreWord::from_diagonal(v);

  auto [g1, g2] = eval_fibre_word(out, s);
  if (!(g1 == u) || !(g2 == v))
    throw std::logic_error("rewrite_012: rewritten word does not evaluate back to (u, v)");
  return out;
}

TransferReport area_transfer(const FibreWord& w, const ReducedWord& v, const FibreSetup& s,
                             const FillingOracle& g2_filler, const FillingOracle& g1_filler) {
  require_presents(g2_filler, s.P2, "G2");
  require_presents(g1_filler, s.P1, "G1");

  // The second-coordinate word w(X,1): diagonal letters only, filled over S.
  ReducedWord w2;
  for (const FibreLetter& l : w.letters())
    if (!l.relator) w2 = w2 * ReducedWord::generator(l.index, l.sign);
  auto k_cert = g2_filler.fill(w2);
  if (!k_cert) {
    if (g2_filler.exact_on_failure())
      throw std::domain_error("area_transfer: second coordinate of w is not trivial in G2");
    throw BudgetExhausted("area_transfer: G2 filling oracle ran out of budget");
  }

  // Relator letters pushed to the right: pi(w) = w(X,1) * prod_j D_j^-1 t_j D_j
  // with D_j the diagonal suffix after the j-th relator letter.
  std::vector<FillingStep> t_steps;
  {
    ReducedWord suffix;  // diagonal product after the current position
    std::vector<FillingStep> rev;
    for (size_t i = w.length(); i-- > 0;) {
      const FibreLetter& l = w.letters()[i];
      if (l.relator) {
        rev.push_back({suffix.inverse(), static_cast<int32_t>(l.index), l.sign});
      } else {
        suffix = ReducedWord::generator(l.index, l.sign) * suffix;
      }
    }
    t_steps.assign(rev.rbegin(), rev.rend());
  }
  const int64_t q = static_cast<int64_t>(t_steps.size());

  // v pi(w)^-1 maps to 1 in G1; fill it over R.
  auto [pi_w, unused_g2] = eval_fibre_word(w, s);
  ReducedWord defect = v * pi_w.inverse();
  auto l_cert = g1_filler.fill(defect);
  if (!l_cert) {
    if (g1_filler.exact_on_failure())
      throw std::domain_error("area_transfer: j_1(v) does not equal the first coordinate of w");
    throw BudgetExhausted("area_transfer: G1 filling oracle ran out of budget");
  }

  TransferReport rep;
  rep.q = q;
  rep.k = static_cast<int64_t>(k_cert->size());
  rep.l = static_cast<int64_t>(l_cert->size());
  for (const FillingStep& st : *l_cert)
    rep.certificate.push_back({st.conjugator, s.r_in_t[st.relator], st.sign});
  for (const FillingStep& st : *k_cert)
    rep.certificate.push_back({st.conjugator, s.s_in_t[st.relator], st.sign});
  for (const FillingStep& st : t_steps) rep.certificate.push_back(st);

  if (!verify_filling(v, rep.certificate, s.PQ))
    throw std::logic_error("area_transfer: composed certificate failed verification");
  rep.bound_rhs = rep.q + rep.k + rep.l;
  rep.holds = static_cast<int64_t>(rep.certificate.size()) <= rep.bound_rhs;
  return rep;
}

GrowthReport growth_report(int r, const std::vector<int64_t>& n_values,
                              const BfsBudget& bfs_budget) {
  if (r < 3) throw std::invalid_argument("growth_report: r must be >= 3");
  GrowthReport rep;
  rep.r = r;
  rep.target_exponent = r - 1;

  VspWitness wit = build_vsp_witnesses(r);
  rep.k = wit.k;
  GroupPresentation pq = gamma_presentation(2, r - 1);
  Alphabet X1 = coordinate_alphabet(1);

  std::vector<int64_t> ns = n_values;
  std::sort(ns.begin(), ns.end());
  rep.entries.resize(ns.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (ns.size() >= 4)
#endif
  for (size_t i = 0; i < ns.size(); ++i) {
    GrowthEntry e;
    e.n = ns[i];
    ReducedWord v = build_w(wit.k * e.n, r - 1);
    e.v_len = static_cast<int64_t>(v.length());
    e.area_lb = area_lower_bound(v, pq, r - 1);
    e.h_upper = build_u(r, e.n).expanded_letters;
    rep.entries[i] = std::move(e);
  }

  if (bfs_budget.max_states > 0) {
    GeneratorSystem gens = build_generators(r);
    for (auto& e : rep.entries) {
      ReducedWord w = build_w(wit.k * e.n, r - 1);
      std::vector<ReducedWord> comps(r);
      comps[0] = w;
      e.h_exact = shortest_length_bfs(Tuple(std::move(comps)), gens, bfs_budget);
      if (!e.h_exact) break;  // larger n will not fit the budget either
    }
  }

  double K = 1.0;
  for (const auto& e : rep.entries) {
    double ratio = static_cast<double>(e.v_len) / static_cast<double>(e.n);
    K = std::max({K, ratio, 1.0 / ratio});
  }
  rep.K = K;

  // Least-squares slope over the log-log pairs.
  if (rep.entries.size() >= 2) {
    double sx = 0, sy = 0;
    std::vector<double> xs, ys;
    for (const auto& e : rep.entries) {
      double x = std::log(static_cast<double>(e.h_upper));
      double y = std::log(std::stod(e.area_lb.to_decimal()));
      xs.push_back(x);
      ys.push_back(y);
      sx += x;
      sy += y;
    }
    double mx = sx / xs.size(), my = sy / ys.size();
    double num = 0, den = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      num += (xs[i] - mx) * (ys[i] - my);
      den += (xs[i] - mx) * (xs[i] - mx);
    }
    if (den > 0) rep.slope = num / den;
  }
  return rep;
}

std::string growth_report_to_json_text(const GrowthReport& rep) {
  nlohmann::ordered_json j;
  j["r"] = rep.r;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : rep.entries) {
    nlohmann::ordered_json ej;
    ej["n"] = e.n;
    ej["area_lb"] = e.area_lb.to_decimal();
    ej["h_upper"] = e.h_upper;
    if (e.h_exact)
      ej["h_exact"] = *e.h_exact;
    else
      ej["h_exact"] = nullptr;
    ej["v_len"] = e.v_len;
    j["entries"].push_back(ej);
  }
  if (rep.slope)
    j["slope"] = *rep.slope;
  else
    j["slope"] = nullptr;
  j["target_exponent"] = rep.target_exponent;
  j["K"] = rep.K;
  return j.dump();
}

}  // namespace nilcert
