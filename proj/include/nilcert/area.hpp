#ifndef NILCERT_AREA_HPP
#define NILCERT_AREA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilcert/bigint.hpp"
#include "nilcert/series.hpp"
#include "nilcert/word.hpp"

namespace nilcert {

struct GroupPresentation {
  Alphabet alphabet;
  std::vector<ReducedWord> relators;  // freely reduced, nontrivial

  int64_t max_relator_length() const;
};

// Presentation of F_k / gamma_c with relators = basic_commutators(k, c).
// Generators are named a, b, c, ... for k <= 26.
GroupPresentation gamma_presentation(int k, int c);

struct FillingStep {
  ReducedWord conjugator;
  int32_t relator;  // index into the presentation's relator list
  int8_t sign;      // +1 or -1

  bool operator==(const FillingStep& o) const = default;
};

// Witness that a word is a product of conjugated relators: its length is an
// area upper bound.
using FillingCertificate = std::vector<FillingStep>;

// True iff the product of the certificate's conjugated relators freely
// reduces to v. Pure free-group computation; throws on a bad relator index.
bool verify_filling(const ReducedWord& v, const FillingCertificate& cert,
                    const GroupPresentation& p);

// Counting lower bound ceil(||L_c(v)||_1 / max_t ||L_c(t)||_1) <= Area_p(v).
// Requires every relator of p and v itself to lie in gamma_c; throws
// std::domain_error otherwise, and std::domain_error if every relator has a
// vanishing degree-c component.
BigInt area_lower_bound(const ReducedWord& v, const GroupPresentation& p, int c);

// Exact filling for F_k / gamma_2: sorts v into normal form, one commutator
// relator per adjacent transposition of distinct generators. Requires all
// exponent sums of v to vanish.
FillingCertificate abelian_fill(const ReducedWord& v, int k);

struct SearchBudget {
  int64_t max_nodes = 200000;  // A* expansions / BFS states
  int64_t conj_cap = -1;       // max conjugator length; -1 means |v|
  int64_t max_word_len = -1;   // max defect length; -1 means |v| + 2*max|r|
};

struct AreaBoundReport {
  ReducedWord word;
  BigInt lower_bound;
  std::optional<int64_t> upper_bound;
  std::optional<FillingCertificate> certificate;
  bool exact = false;
};

// Best-first search for a minimal filling. Admissible heuristic: the
// counting lower bound of the remaining defect; ties broken by shorter
// defect, then lexicographic word order, so runs are reproducible. Exhausted
// budget yields an empty result, never a wrong one.
std::optional<AreaBoundReport> brute_force_area(const ReducedWord& v,
                                                const GroupPresentation& p,
                                                const SearchBudget& budget = {});

std::string certificate_to_json_text(const ReducedWord& v, const FillingCertificate& cert,
                                     const GroupPresentation& p);

struct ParsedCertificate {
  GroupPresentation presentation;
  ReducedWord word;
  FillingCertificate cert;
};

ParsedCertificate certificate_from_json_text(std::string_view json_text);

}  // namespace nilcert

#endif
