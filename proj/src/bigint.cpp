#include "nilcert/bigint.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace nilcert {

BigInt::BigInt(int64_t v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  uint64_t m = v < 0 ? (~static_cast<uint64_t>(v) + 1) : static_cast<uint64_t>(v);
  while (m) {
    limbs_.push_back(static_cast<uint32_t>(m % kBase));
    m /= kBase;
  }
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r;
  r.reserve(std::max(a.size(), b.size()) + 1);
  uint32_t carry = 0;
  for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    r.push_back(static_cast<uint32_t>(s % kBase));
    carry = static_cast<uint32_t>(s / kBase);
  }
  if (carry) r.push_back(carry);
  return r;
}

// requires |a| >= |b|
std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r;
  r.reserve(a.size());
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (s < 0) {
      s += kBase;
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.push_back(static_cast<uint32_t>(s));
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt& BigInt::operator+=(const BigInt& o) {
  if (o.sign_ == 0) return *this;
  if (sign_ == 0) return *this = o;
  if (sign_ == o.sign_) {
    limbs_ = add_mag(limbs_, o.limbs_);
    return *this;
  }
  int c = cmp_mag(limbs_, o.limbs_);
  if (c == 0) {
    sign_ = 0;
    limbs_.clear();
  } else if (c > 0) {
    limbs_ = sub_mag(limbs_, o.limbs_);
  } else {
    limbs_ = sub_mag(o.limbs_, limbs_);
    sign_ = o.sign_;
  }
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) { return *this += -o; }

BigInt operator*(const BigInt& a, const BigInt& b) {
  BigInt r;
  if (a.sign_ == 0 || b.sign_ == 0) return r;
  r.sign_ = a.sign_ * b.sign_;
  r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
  for (size_t i = 0; i < a.limbs_.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.limbs_.size(); ++j) {
      uint64_t cur = r.limbs_[i + j] + static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] + carry;
      r.limbs_[i + j] = static_cast<uint32_t>(cur % BigInt::kBase);
      carry = cur / BigInt::kBase;
    }
    size_t k = i + b.limbs_.size();
    while (carry) {
      uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<uint32_t>(cur % BigInt::kBase);
      carry = cur / BigInt::kBase;
      ++k;
    }
  }
  r.trim();
  return r;
}

BigIntDiv BigInt::divmod_u32(uint32_t d) const {
  if (d == 0) throw std::invalid_argument("BigInt: division by zero");
  BigIntDiv res{BigInt(), 0};
  res.quot.limbs_.assign(limbs_.size(), 0);
  uint64_t rem = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    uint64_t cur = rem * kBase + limbs_[i];
    res.quot.limbs_[i] = static_cast<uint32_t>(cur / d);
    rem = cur % d;
  }
  res.quot.sign_ = sign_;
  res.quot.trim();
  res.rem = static_cast<uint32_t>(rem);
  return res;
}

bool BigInt::operator<(const BigInt& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_;
  int c = cmp_mag(limbs_, o.limbs_);
  return sign_ >= 0 ? c < 0 : c > 0;
}

bool BigInt::fits_int64() const {
  static const BigInt lo(std::numeric_limits<int64_t>::min());
  static const BigInt hi(std::numeric_limits<int64_t>::max());
  return !(*this < lo) && !(hi < *this);
}

int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw std::overflow_error("BigInt: value does not fit int64");
  uint64_t v = 0;
  for (size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
  return sign_ < 0 ? static_cast<int64_t>(~v + 1) : static_cast<int64_t>(v);
}

uint32_t BigInt::to_u32() const {
  if (sign_ < 0) throw std::overflow_error("BigInt: negative value in to_u32");
  int64_t v = to_int64();
  if (v > std::numeric_limits<uint32_t>::max()) throw std::overflow_error("BigInt: value does not fit u32");
  return static_cast<uint32_t>(v);
}

BigInt BigInt::from_decimal(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("BigInt: empty decimal string");
  bool neg = false;
  size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("BigInt: no digits");
  BigInt r;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
    r = r * BigInt(10) + BigInt(s[i] - '0');
  }
  if (neg) r.sign_ = -r.sign_;
  return r;
}

std::string BigInt::to_decimal() const {
  if (sign_ == 0) return "0";
  std::string out = sign_ < 0 ? "-" : "";
  out += std::to_string(limbs_.back());
  for (size_t i = limbs_.size() - 1; i-- > 0;) {
    std::string part = std::to_string(limbs_[i]);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

BigInt ceil_div(const BigInt& n, uint32_t d) {
  if (n.sign() < 0) throw std::invalid_argument("ceil_div: negative numerator");
  auto r = (n + BigInt(static_cast<int64_t>(d) - 1)).divmod_u32(d);
  return r.quot;
}

}  // namespace nilcert
