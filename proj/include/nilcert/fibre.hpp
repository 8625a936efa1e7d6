#ifndef NILCERT_FIBRE_HPP
#define NILCERT_FIBRE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilcert/area.hpp"
#include "nilcert/subdirect.hpp"
#include "nilcert/bigint.hpp"
#include "nilcert/word.hpp"

namespace nilcert {

// Thrown when a bounded search gives up; distinct from a genuine
// precondition failure so callers can tell "don't know" from "wrong".
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shared-alphabet data for G1 = <X|R>, G2 = <X|S>, Q = <X|T> with R, S
// contained in T. C is the maximum relator length of T.
struct FibreSetup {
  Alphabet X;
  GroupPresentation P1, P2, PQ;
  int64_t C = 0;
  std::vector<int32_t> r_in_t, s_in_t;  // positions of R and S inside T
};

FibreSetup make_fibre_setup(std::vector<ReducedWord> R, std::vector<ReducedWord> S,
                            std::vector<ReducedWord> T, Alphabet X);

// Letter of the fibre-product generating set: a diagonal generator (x, x) or
// a first-coordinate relator element (t, 1).
struct FibreLetter {
  bool relator;
  uint32_t index;
  int8_t sign;

  FibreLetter inverse() const { return {relator, index, static_cast<int8_t>(-sign)}; }
  bool operator==(const FibreLetter& o) const = default;
};

// Freely reduced word over diagonal and relator letters.
class FibreWord {
public:
  FibreWord() = default;
  static FibreWord from_diagonal(const ReducedWord& w);
  static FibreWord relator_letter(uint32_t index, int sign);

  size_t length() const { return letters_.size(); }
  const std::vector<FibreLetter>& letters() const { return letters_; }
  int64_t relator_letter_count() const;

  friend FibreWord operator*(const FibreWord& a, const FibreWord& b);
  FibreWord inverse() const;

  bool operator==(const FibreWord& o) const { return letters_ == o.letters_; }

private:
  std::vector<FibreLetter> letters_;
};

// Values of the two coordinates: diagonal letters map to (x, x), relator
// letters to (t, 1).
std::pair<ReducedWord, ReducedWord> eval_fibre_word(const FibreWord& w, const FibreSetup& s);

// Filling oracle interface: certificate or nothing. exact_on_failure tells
// whether an empty answer refutes fillability (free and abelian oracles) or
// merely reflects an exhausted budget (search oracle).
class FillingOracle {
public:
  virtual ~FillingOracle() = default;
  virtual const GroupPresentation& presentation() const = 0;
  virtual std::optional<FillingCertificate> fill(const ReducedWord& v) const = 0;
  virtual bool exact_on_failure() const = 0;
};

// Free group: fillable iff freely trivial, with the empty certificate.
class FreeFillingOracle : public FillingOracle {
public:
  explicit FreeFillingOracle(Alphabet X) : p_{std::move(X), {}} {}
  const GroupPresentation& presentation() const override { return p_; }
  std::optional<FillingCertificate> fill(const ReducedWord& v) const override;
  bool exact_on_failure() const override { return true; }

private:
  GroupPresentation p_;
};

// F_k / gamma_2 via abelian_fill, presented over the given alphabet.
class AbelianFillingOracle : public FillingOracle {
public:
  explicit AbelianFillingOracle(Alphabet X)
      : k_(static_cast<int>(X.size())),
        p_{std::move(X), basic_commutators(k_, 2)} {}
  const GroupPresentation& presentation() const override { return p_; }
  std::optional<FillingCertificate> fill(const ReducedWord& v) const override;
  bool exact_on_failure() const override { return true; }

private:
  int k_;
  GroupPresentation p_;
};

// Bounded best-first search via brute_force_area.
class SearchFillingOracle : public FillingOracle {
public:
  SearchFillingOracle(GroupPresentation p, SearchBudget budget)
      : p_(std::move(p)), budget_(budget) {}
  const GroupPresentation& presentation() const override { return p_; }
  std::optional<FillingCertificate> fill(const ReducedWord& v) const override;
  bool exact_on_failure() const override { return false; }

private:
  GroupPresentation p_;
  SearchBudget budget_;
};

// Rewrites a fibre-product element (u, v) as a word in the diagonal and
// relator letters: the q_filler's certificate for u v^-1 supplies the
// conjugated relator letters, followed by v spelled diagonally. Throws
// std::domain_error if (u, v) violates the fibre condition, BudgetExhausted
// if the oracle gives up.
FibreWord rewrite_012(const ReducedWord& u, const ReducedWord& v, const FibreSetup& s,
                      const FillingOracle& q_filler);

struct TransferReport {
  int64_t q = 0;  // relator letters in w
  int64_t k = 0;  // certificate length for the second-coordinate word over P2
  int64_t l = 0;  // certificate length for v pi(w)^-1 over P1
  FillingCertificate certificate;  // verified filling of v over PQ
  int64_t bound_rhs = 0;           // q + k + l
  bool holds = false;              // certificate length <= bound_rhs
};

// The area-transfer pipeline: from a fibre word w with trivial second
// coordinate and a word v with j_1(v) equal to w's first coordinate, derive
// a verified PQ-filling of v of length at most q + k + l.
TransferReport area_transfer(const FibreWord& w, const ReducedWord& v, const FibreSetup& s,
                             const FillingOracle& g2_filler, const FillingOracle& g1_filler);

struct GrowthEntry {
  int64_t n = 0;
  BigInt area_lb;
  int64_t h_upper = 0;
  std::optional<int64_t> h_exact;
  int64_t v_len = 0;
};

struct GrowthReport {
  int r = 0;
  int64_t k = 0;
  std::vector<GrowthEntry> entries;
  std::optional<double> slope;  // least-squares slope of log(area_lb) vs log(h_upper)
  int target_exponent = 0;
  double K = 0.0;  // max observed ratio between |v_n| and n, both ways
};

// Per-n certified data for the distortion-vs-area tradeoff: area_lb from the
// counting bound on w_{kn}, h_upper from expanding u_n through the witness
// Z-expressions, h_exact by BFS when the budget allows.
GrowthReport growth_report(int r, const std::vector<int64_t>& n_values,
                              const BfsBudget& bfs_budget = {0});

std::string growth_report_to_json_text(const GrowthReport& rep);

}  // namespace nilcert

#endif
