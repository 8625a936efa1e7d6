#ifndef NILCERT_BIGINT_HPP
#define NILCERT_BIGINT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nilcert {

class BigInt;

struct BigIntDiv;

// Signed arbitrary-precision integer, sign-magnitude with base-10^9 limbs.
// Covers exactly what series coefficients and certificate accounting need:
// ring arithmetic, comparisons, decimal I/O, and division by machine-word
// divisors (relator norms are always small).
class BigInt {
public:
  BigInt() = default;
  BigInt(int64_t v);

  static BigInt from_decimal(std::string_view s);  // throws std::invalid_argument
  std::string to_decimal() const;

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }

  BigInt operator-() const;
  BigInt abs() const;

  BigInt& operator+=(const BigInt& o);
  BigInt& operator-=(const BigInt& o);
  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  // Quotient and remainder by a small positive divisor; the remainder is
  // taken on the magnitude (used only on nonnegative values here).
  BigIntDiv divmod_u32(uint32_t d) const;  // throws on d == 0

  bool operator==(const BigInt& o) const { return sign_ == o.sign_ && limbs_ == o.limbs_; }
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const;
  bool operator>(const BigInt& o) const { return o < *this; }
  bool operator<=(const BigInt& o) const { return !(o < *this); }
  bool operator>=(const BigInt& o) const { return !(*this < o); }

  bool fits_int64() const;
  int64_t to_int64() const;   // throws std::overflow_error if out of range
  uint32_t to_u32() const;    // throws if negative or too large

private:
  static constexpr uint32_t kBase = 1000000000u;
  int sign_ = 0;                  // -1, 0, +1
  std::vector<uint32_t> limbs_;   // little-endian, no leading zeros, empty iff zero

  void trim();
  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
};

struct BigIntDiv {
  BigInt quot;
  uint32_t rem;
};

// ceil(n / d) for n >= 0, d > 0.
BigInt ceil_div(const BigInt& n, uint32_t d);

}  // namespace nilcert

#endif
