// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "nilcert/area.hpp"
#include "nilcert/subdirect.hpp"
#include "nilcert/expr.hpp"
#include "nilcert/fibre.hpp"
#include "nilcert/series.hpp"
#include "nilcert/word.hpp"

using namespace nilcert;
using nilcert::test::all_reduced_words_up_to;
using nilcert::test::heis_eval;
using nilcert::test::random_reduced_word;

namespace {

const Alphabet kAB = Alphabet::from_csv("a,b");

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.str().empty()) detail << "; ";
      detail << what;
    }
  }
};

// 1. Exact areas in the abelian quotient: search, constructive filling and
//    counting bound all give exactly n^2.
void criterion1(Check& c) {
  GroupPresentation p = gamma_presentation(2, 2);
  for (int64_t n = 1; n <= 3; ++n) {
    ReducedWord v = build_w(n, 2);
    auto rep = brute_force_area(v, p, SearchBudget{2000000, -1, -1});
    c.require(rep.has_value(), "search exhausted at n=" + std::to_string(n));
    if (!rep) continue;
    c.require(rep->exact && *rep->upper_bound == n * n,
              "search area != n^2 at n=" + std::to_string(n));
    c.require(verify_filling(v, *rep->certificate, p),
              "search certificate invalid at n=" + std::to_string(n));
  }
  for (int64_t n = 1; n <= 20; ++n) {
    ReducedWord v = build_w(n, 2);
    auto cert = abelian_fill(v, 2);
    c.require(static_cast<int64_t>(cert.size()) == n * n,
              "abelian_fill length != n^2 at n=" + std::to_string(n));
    c.require(verify_filling(v, cert, p),
              "abelian_fill certificate invalid at n=" + std::to_string(n));
    c.require(area_lower_bound(v, p, 2) == BigInt(n * n),
              "counting bound != n^2 at n=" + std::to_string(n));
  }
}

// 2. Certified lower bound Area(w_n) >= n^{r-1} in F_2/gamma_{r-1}.
void criterion2(Check& c) {
  for (int r : {3, 4, 5}) {
    GroupPresentation p = gamma_presentation(2, r - 1);
    int64_t n_max = r == 5 ? 10 : 30;
    for (int64_t n = 1; n <= n_max; ++n) {
      BigInt target(1);
      for (int i = 0; i < r - 1; ++i) target *= BigInt(n);
      BigInt lb = area_lower_bound(build_w(n, r - 1), p, r - 1);
      c.require(!(lb < target),
                "lb < n^{r-1} at r=" + std::to_string(r) + ", n=" + std::to_string(n));
    }
  }
}

// 3. The witness identity u_n = (w_{kn}, 1, ..., 1) with the letter bound.
void criterion3(Check& c) {
  for (int r : {3, 4, 5}) {
    for (int64_t n = 1; n <= 4; ++n) {
      WitnessIdentityReport rep = verify_witness_identity(r, n);
      std::string at = " at r=" + std::to_string(r) + ", n=" + std::to_string(n);
      c.require(rep.identity_holds, "identity fails" + at);
      c.require(rep.in_gamma_prev, "w_{kn} not in gamma_{r-1}" + at);
      c.require(rep.not_in_gamma_r, "w_{kn} in gamma_r" + at);
      c.require(rep.u_letters <= rep.letter_bound, "letter bound exceeded" + at);
    }
  }
}

// 4. |[a^n, g]| >= 2n+2 for every reduced g with |g| <= 6 outside <a>, n <= 5.
void criterion4(Check& c) {
  int64_t checked = 0;
  for (const ReducedWord& g : all_reduced_words_up_to(6)) {
    if (g.is_power_of(0)) continue;
    for (int64_t n = 1; n <= 5; ++n) {
      auto rep = check_commutator_length(n, g);
      ++checked;
      if (!rep.bound_holds) {
        c.require(false, "violation at n=" + std::to_string(n) + ", g=" + word_to_text(g, kAB));
        return;
      }
    }
  }
  c.require(checked > 7000, "enumeration too small");
  c.detail << "checked " << checked << " pairs";
}

// 5. Area transfer: verified certificates of length <= q+k+l, never beating
//    the certified counting lower bound.
void criterion5(Check& c) {
  FibreSetup s = make_fibre_setup({}, {}, {read_word("[a,b]", kAB)}, kAB);
  FreeFillingOracle free_oracle(kAB);
  AbelianFillingOracle q_filler(kAB);
  GroupPresentation p2 = gamma_presentation(2, 2);
  std::mt19937 rng(20250801);

  for (int i = 0; i < 200; ++i) {
    // random fibre word with freely trivial second coordinate: interleave
    // relator letters with diagonal segments that cancel overall
    int m = 1 + static_cast<int>(rng() % 5);
    FibreWord w;
    ReducedWord sigma_total;
    for (int j = 0; j < m; ++j) {
      ReducedWord sigma = random_reduced_word(rng, rng() % 5);
      sigma_total = sigma_total * sigma;
      w = w * FibreWord::from_diagonal(sigma) *
          FibreWord::relator_letter(0, rng() % 2 ? 1 : -1);
    }
    w = w * FibreWord::from_diagonal(sigma_total.inverse());

    ReducedWord v = eval_fibre_word(w, s).first;
    TransferReport rep = area_transfer(w, v, s, free_oracle, free_oracle);
    c.require(verify_filling(v, rep.certificate, s.PQ), "certificate invalid (random)");
    c.require(static_cast<int64_t>(rep.certificate.size()) <= rep.q + rep.k + rep.l,
              "certificate longer than q+k+l (random)");
    c.require(rep.holds, "bound fails (random)");
    c.require(!(BigInt(static_cast<int64_t>(rep.certificate.size())) <
                area_lower_bound(v, p2, 2)),
              "upper bound below certified lower bound (random)");
    if (!c.ok) return;
  }

  for (int64_t n = 1; n <= 6; ++n) {
    ReducedWord v = build_w(n, 2);
    FibreWord w = rewrite_012(v, ReducedWord{}, s, q_filler);
    TransferReport rep = area_transfer(w, v, s, free_oracle, free_oracle);
    std::string at = " at n=" + std::to_string(n);
    c.require(verify_filling(v, rep.certificate, s.PQ), "certificate invalid" + at);
    c.require(static_cast<int64_t>(rep.certificate.size()) <= rep.q + rep.k + rep.l,
              "certificate longer than q+k+l" + at);
    BigInt lb = area_lower_bound(v, p2, 2);
    c.require(!(BigInt(static_cast<int64_t>(rep.certificate.size())) < lb),
              "upper bound below certified lower bound" + at);
  }
}

// 6. 0-1-2 rewrite round trip on random fibre pairs.
void criterion6(Check& c) {
  FibreSetup s = make_fibre_setup({}, {}, {read_word("[a,b]", kAB)}, kAB);
  AbelianFillingOracle q_filler(kAB);
  std::mt19937 rng(20250802);
  for (int i = 0; i < 200; ++i) {
    ReducedWord v = random_reduced_word(rng, rng() % 10);
    ReducedWord z = random_reduced_word(rng, rng() % 10);
    int64_t sums[2] = {0, 0};
    for (const Letter& l : z.letters()) sums[l.gen] += l.sign;
    for (uint32_t g = 0; g < 2; ++g) z = z * ReducedWord::generator_power(g, -sums[g]);
    ReducedWord u = z * v;  // u v^-1 = z lies in gamma_2

    FibreWord w = rewrite_012(u, v, s, q_filler);
    auto [g1, g2] = eval_fibre_word(w, s);
    c.require(g1 == u && g2 == v, "round trip failed at i=" + std::to_string(i));
    for (const FibreLetter& l : w.letters())
      c.require(l.relator ? l.index < s.PQ.relators.size() : l.index < s.X.size(),
                "letter outside X_Delta u T_1");
    if (!c.ok) return;
  }
}

// 7. Growth exponents from the certified data.
void criterion7(Check& c) {
  std::vector<int64_t> ns3, ns4;
  for (int64_t n = 1; n <= 40; ++n) ns3.push_back(n);
  for (int64_t n = 1; n <= 25; ++n) ns4.push_back(n);

  GrowthReport r3 = growth_report(3, ns3, BfsBudget{0});
  c.require(r3.slope.has_value(), "r=3 slope missing");
  if (r3.slope)
    c.require(*r3.slope >= 1.8 - 1e-9 && *r3.slope <= 2.0 + 1e-9,
              "r=3 slope " + std::to_string(*r3.slope) + " outside [1.8, 2.0]");
  c.require(std::isfinite(r3.K) && r3.K >= 1.0, "r=3 K not finite");

  GrowthReport r4 = growth_report(4, ns4, BfsBudget{0});
  c.require(r4.slope.has_value(), "r=4 slope missing");
  if (r4.slope)
    c.require(*r4.slope >= 2.8 - 1e-9 && *r4.slope <= 3.0 + 1e-9,
              "r=4 slope " + std::to_string(*r4.slope) + " outside [2.8, 3.0]");
  c.require(std::isfinite(r4.K) && r4.K >= 1.0, "r=4 K not finite");

  c.detail << "slopes " << (r3.slope ? *r3.slope : 0.0) << ", " << (r4.slope ? *r4.slope : 0.0)
           << "; K " << r3.K << ", " << r4.K;
}

// 8. Independent oracles: the unitriangular matrix model and the Witt ranks.
void criterion8(Check& c) {
  std::mt19937 rng(20250803);
  for (int i = 0; i < 1000; ++i) {
    ReducedWord u = random_reduced_word(rng, rng() % 12);
    ReducedWord v = random_reduced_word(rng, rng() % 12);
    bool series_eq = magnus_expand(u, 2, kAB) == magnus_expand(v, 2, kAB);
    bool matrix_eq = heis_eval(u) == heis_eval(v);
    if (series_eq != matrix_eq) {
      c.require(false, "matrix model disagrees at i=" + std::to_string(i));
      return;
    }
  }
  for (int weight : {3, 4}) {
    std::vector<HomogeneousVector> vecs;
    for (const auto& w : basic_commutators(2, weight))
      vecs.push_back(lie_component(w, weight, kAB));
    int64_t expect = witt_rank(2, weight);
    c.require(lattice_rank(vecs) == expect,
              "rank mismatch at weight " + std::to_string(weight));
    c.require(expect == (weight == 3 ? 2 : 3), "Witt formula value unexpected");
  }
}

struct Criterion {
  const char* name;
  double limit_s;
  std::function<void(Check&)> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"abelian exact areas (n^2 by search, filling and counting)", 60, criterion1},
      {"certified area lower bound n^{r-1} for w_n", 120, criterion2},
      {"witness identity u_n = (w_{kn}, 1, ..., 1) with letter bound", 30, criterion3},
      {"commutator length bound, exhaustive to |g| <= 6, n <= 5", 30, criterion4},
      {"area transfer certificates within q+k+l", 60, criterion5},
      {"0-1-2 rewrite round trip", 30, criterion6},
      {"growth exponents r=3 -> 2, r=4 -> 3", 120, criterion7},
      {"matrix model and Witt rank cross-checks", 30, criterion8},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].fn(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= criteria[i].limit_s) c.require(false, "over time limit");
    const std::string extra = c.detail.str();
    std::printf("criterion %zu: %s (%.2fs) %s%s%s\n", i + 1, c.ok ? "PASS" : "FAIL", secs,
                criteria[i].name, extra.empty() ? "" : " -- ", extra.c_str());
    if (!c.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
