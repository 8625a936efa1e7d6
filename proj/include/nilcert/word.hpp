#ifndef NILCERT_WORD_HPP
#define NILCERT_WORD_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nilcert {

// Ordered finite set of generator names. Names must look like identifiers
// (letter followed by letters/digits) so they are expressible in the word
// grammar; "1" is reserved for the identity.
class Alphabet {
public:
  explicit Alphabet(std::vector<std::string> symbols);
  static Alphabet from_csv(std::string_view csv);  // "a,b" -> {a, b}

  size_t size() const { return symbols_.size(); }
  const std::string& name(uint32_t i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<uint32_t> index(std::string_view name) const;

  bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

private:
  std::vector<std::string> symbols_;
};

struct Letter {
  uint32_t gen;
  int8_t sign;  // +1 or -1

  Letter inverse() const { return {gen, static_cast<int8_t>(-sign)}; }
  bool operator==(const Letter& o) const { return gen == o.gen && sign == o.sign; }
  bool operator<(const Letter& o) const {
    return gen != o.gen ? gen < o.gen : sign < o.sign;
  }
};

// Freely reduced word; the canonical form of a free-group element. Immutable
// value: all products return new words and reduce eagerly.
class ReducedWord {
public:
  ReducedWord() = default;

  // Reduces an arbitrary letter sequence.
  static ReducedWord reduce(std::span<const Letter> letters);
  static ReducedWord generator(uint32_t gen, int sign = 1);
  static ReducedWord generator_power(uint32_t gen, int64_t exp);

  size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& at(size_t i) const { return letters_[i]; }

  ReducedWord inverse() const;
  ReducedWord pow(int64_t e) const;
  ReducedWord prefix(size_t n) const;  // first n letters
  ReducedWord suffix(size_t n) const;  // letters from position n on

  friend ReducedWord operator*(const ReducedWord& a, const ReducedWord& b);

  // g w g^-1
  ReducedWord conjugated_by(const ReducedWord& g) const;
  static ReducedWord commutator(const ReducedWord& u, const ReducedWord& v);

  // True iff every letter is (a)^{+-1} for the given generator.
  bool is_power_of(uint32_t gen) const;

  bool operator==(const ReducedWord& o) const { return letters_ == o.letters_; }
  bool operator<(const ReducedWord& o) const;  // length, then lexicographic

  size_t hash() const;

private:
  std::vector<Letter> letters_;
};

struct ReducedWordHash {
  size_t operator()(const ReducedWord& w) const { return w.hash(); }
};

// Run-grouped text form, e.g. "a^2 b^-3 a"; identity prints as "1".
std::string word_to_text(const ReducedWord& w, const Alphabet& X);

// The iterated commutator [a^n, [a^n, ..., [a^n, b^n]...]] with m entries
// total: m-1 copies of a^n and the innermost b^n. Requires n >= 1, m >= 2,
// a != b.
ReducedWord build_w(int64_t n, int m, uint32_t a = 0, uint32_t b = 1);

struct CommutatorLengthReport {
  int64_t length;      // |[a^n, g]| after free reduction
  bool bound_holds;    // length >= 2n + 2
  bool asserted;       // the bound is claimed only when g is not a power of a
};

CommutatorLengthReport check_commutator_length(int64_t n, const ReducedWord& g, uint32_t a = 0);

}  // namespace nilcert

#endif
