#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pbi {

// Arbitrary-precision signed integer, sign-magnitude over base-1e9 limbs
// (little endian, no leading zero limbs, zero is the empty limb vector).
// Implements exactly what exact rational arithmetic needs: ring operations,
// truncating divmod, gcd and decimal conversion.
class BigInt {
 public:
  BigInt() = default;

  BigInt(long long value) {  // NOLINT: implicit by design
    bool negative = value < 0;
    unsigned long long magnitude =
        negative ? ~static_cast<unsigned long long>(value) + 1ULL
                 : static_cast<unsigned long long>(value);
    while (magnitude > 0) {
      limbs_.push_back(static_cast<std::uint32_t>(magnitude % kBase));
      magnitude /= kBase;
    }
    negative_ = negative && !limbs_.empty();
  }

  static BigInt from_unsigned(unsigned long long magnitude) {
    BigInt result;
    while (magnitude > 0) {
      result.limbs_.push_back(static_cast<std::uint32_t>(magnitude % kBase));
      magnitude /= kBase;
    }
    return result;
  }

  static BigInt from_decimal(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
      negative = text.front() == '-';
      text.remove_prefix(1);
    }
    if (text.empty()) throw std::invalid_argument("BigInt: empty literal");
    for (char c : text) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("BigInt: invalid digit in literal");
    }
    BigInt result;
    for (std::size_t end = text.size(); end > 0;) {
      std::size_t begin = end >= kBaseDigits ? end - kBaseDigits : 0;
      std::uint32_t limb = 0;
      for (std::size_t i = begin; i < end; ++i)
        limb = limb * 10 + static_cast<std::uint32_t>(text[i] - '0');
      result.limbs_.push_back(limb);
      end = begin;
    }
    result.trim();
    result.negative_ = negative && !result.limbs_.empty();
    return result;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return negative_; }
  bool is_odd() const { return !limbs_.empty() && (limbs_.front() & 1u); }
  int sign() const { return limbs_.empty() ? 0 : (negative_ ? -1 : 1); }

  BigInt operator-() const {
    BigInt result = *this;
    result.negative_ = !result.limbs_.empty() && !result.negative_;
    return result;
  }

  BigInt abs() const {
    BigInt result = *this;
    result.negative_ = false;
    return result;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.negative_ == b.negative_) {
      BigInt result;
      result.limbs_ = add_magnitudes(a.limbs_, b.limbs_);
      result.negative_ = a.negative_ && !result.limbs_.empty();
      return result;
    }
    // Opposite signs: subtract the smaller magnitude from the larger.
    int cmp = compare_magnitudes(a.limbs_, b.limbs_);
    if (cmp == 0) return BigInt{};
    BigInt result;
    if (cmp > 0) {
      result.limbs_ = sub_magnitudes(a.limbs_, b.limbs_);
      result.negative_ = a.negative_;
    } else {
      result.limbs_ = sub_magnitudes(b.limbs_, a.limbs_);
      result.negative_ = b.negative_;
    }
    result.negative_ = result.negative_ && !result.limbs_.empty();
    return result;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt result;
    result.limbs_ = mul_magnitudes(a.limbs_, b.limbs_);
    result.negative_ = (a.negative_ != b.negative_) && !result.limbs_.empty();
    return result;
  }

  // Truncating division: quotient = trunc(a / b), remainder = a - quotient*b,
  // so the remainder carries the sign of a. Throws on b == 0.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& quotient,
                     BigInt& remainder) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    std::vector<std::uint32_t> q, r;
    divmod_magnitudes(a.limbs_, b.limbs_, q, r);
    quotient.limbs_ = std::move(q);
    remainder.limbs_ = std::move(r);
    quotient.negative_ =
        (a.negative_ != b.negative_) && !quotient.limbs_.empty();
    remainder.negative_ = a.negative_ && !remainder.limbs_.empty();
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
  }

  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
  }

  BigInt& operator+=(const BigInt& other) { return *this = *this + other; }
  BigInt& operator-=(const BigInt& other) { return *this = *this - other; }
  BigInt& operator*=(const BigInt& other) { return *this = *this * other; }
  BigInt& operator/=(const BigInt& other) { return *this = *this / other; }

  static BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt x = a.abs();
    BigInt y = b.abs();
    while (!y.is_zero()) {
      BigInt q, r;
      divmod(x, y, q, r);
      x = std::move(y);
      y = std::move(r);
    }
    return x;
  }

  static BigInt pow10(unsigned exponent) {
    BigInt result;
    result.limbs_.assign(exponent / kBaseDigits, 0);
    std::uint32_t top = 1;
    for (unsigned i = 0; i < exponent % kBaseDigits; ++i) top *= 10;
    result.limbs_.push_back(top);
    return result;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) = default;

  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    if (a.negative_ != b.negative_)
      return a.negative_ ? std::strong_ordering::less
                         : std::strong_ordering::greater;
    int cmp = compare_magnitudes(a.limbs_, b.limbs_);
    if (a.negative_) cmp = -cmp;
    if (cmp < 0) return std::strong_ordering::less;
    if (cmp > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (limbs_.empty()) return "0";
    std::string out;
    if (negative_) out.push_back('-');
    out += std::to_string(limbs_.back());
    char chunk[kBaseDigits + 1];
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
      std::snprintf(chunk, sizeof chunk, "%09u", limbs_[i]);
      out += chunk;
    }
    return out;
  }

 private:
  static constexpr std::uint64_t kBase = 1'000'000'000;
  static constexpr unsigned kBaseDigits = 9;

  bool negative_ = false;
  std::vector<std::uint32_t> limbs_;

  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
  }

  static void trim(std::vector<std::uint32_t>& limbs) {
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
  }

  static int compare_magnitudes(const std::vector<std::uint32_t>& a,
                                const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }

  static std::vector<std::uint32_t> add_magnitudes(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> result(std::max(a.size(), b.size()) + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < result.size(); ++i) {
      std::uint64_t sum = carry;
      if (i < a.size()) sum += a[i];
      if (i < b.size()) sum += b[i];
      result[i] = static_cast<std::uint32_t>(sum % kBase);
      carry = sum / kBase;
    }
    assert(carry == 0);
    trim(result);
    return result;
  }

  // Requires |a| >= |b|.
  static std::vector<std::uint32_t> sub_magnitudes(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b) {
    assert(compare_magnitudes(a, b) >= 0);
    std::vector<std::uint32_t> result = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < result.size(); ++i) {
      std::int64_t value = static_cast<std::int64_t>(result[i]) - borrow -
                           (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
      if (value < 0) {
        value += static_cast<std::int64_t>(kBase);
        borrow = 1;
      } else {
        borrow = 0;
      }
      result[i] = static_cast<std::uint32_t>(value);
    }
    assert(borrow == 0);
    trim(result);
    return result;
  }

  static std::vector<std::uint32_t> mul_magnitudes(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> result(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.size() || carry; ++j) {
        std::uint64_t cur = result[i + j] + carry;
        if (j < b.size())
          cur += static_cast<std::uint64_t>(a[i]) * b[j];
        result[i + j] = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
      }
    }
    trim(result);
    return result;
  }

  // m < 2^32; products stay below 2^63 with base-1e9 limbs.
  static std::vector<std::uint32_t> mul_small(
      const std::vector<std::uint32_t>& a, std::uint64_t m) {
    if (a.empty() || m == 0) return {};
    std::vector<std::uint32_t> result(a.size() + 2, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < result.size(); ++i) {
      std::uint64_t cur = carry + (i < a.size() ? a[i] * m : 0);
      result[i] = static_cast<std::uint32_t>(cur % kBase);
      carry = cur / kBase;
    }
    assert(carry == 0);
    trim(result);
    return result;
  }

  // Schoolbook long division on magnitudes. The divisor is scaled so its top
  // limb is at least kBase/2, which keeps the per-digit estimate within two
  // of the true quotient digit; the correction loops absorb the rest.
  static void divmod_magnitudes(const std::vector<std::uint32_t>& a,
                                const std::vector<std::uint32_t>& b,
                                std::vector<std::uint32_t>& quotient,
                                std::vector<std::uint32_t>& remainder) {
    quotient.clear();
    remainder.clear();
    if (a.empty()) return;
    if (compare_magnitudes(a, b) < 0) {
      remainder = a;
      return;
    }
    if (b.size() == 1) {
      std::uint64_t divisor = b[0];
      quotient.assign(a.size(), 0);
      std::uint64_t rem = 0;
      for (std::size_t i = a.size(); i-- > 0;) {
        std::uint64_t cur = rem * kBase + a[i];
        quotient[i] = static_cast<std::uint32_t>(cur / divisor);
        rem = cur % divisor;
      }
      trim(quotient);
      if (rem != 0) remainder.push_back(static_cast<std::uint32_t>(rem));
      return;
    }

    std::uint64_t norm = kBase / (b.back() + 1ULL);
    std::vector<std::uint32_t> u = mul_small(a, norm);
    std::vector<std::uint32_t> v = mul_small(b, norm);
    const std::size_t n = v.size();
    const std::uint64_t v_top = v.back();

    quotient.assign(u.size(), 0);
    std::vector<std::uint32_t> r;  // running remainder, invariant r < v*kBase
    r.reserve(n + 1);
    for (std::size_t i = u.size(); i-- > 0;) {
      r.insert(r.begin(), u[i]);  // r = r*kBase + u[i]
      trim(r);
      std::uint64_t top1 = r.size() > n ? r[n] : 0;
      std::uint64_t top2 = r.size() > n - 1 ? r[n - 1] : 0;
      std::uint64_t digit = (top1 * kBase + top2) / v_top;
      digit = std::min<std::uint64_t>(digit, kBase - 1);
      std::vector<std::uint32_t> vd = mul_small(v, digit);
      while (compare_magnitudes(r, vd) < 0) {
        --digit;
        vd = sub_magnitudes(vd, v);
      }
      r = sub_magnitudes(r, vd);
      while (compare_magnitudes(r, v) >= 0) {
        ++digit;
        r = sub_magnitudes(r, v);
      }
      assert(digit < kBase);
      quotient[i] = static_cast<std::uint32_t>(digit);
    }
    trim(quotient);

    // Undo the normalization scaling of the remainder.
    if (norm > 1 && !r.empty()) {
      std::uint64_t rem = 0;
      for (std::size_t i = r.size(); i-- > 0;) {
        std::uint64_t cur = rem * kBase + r[i];
        r[i] = static_cast<std::uint32_t>(cur / norm);
        rem = cur % norm;
      }
      assert(rem == 0);
      trim(r);
    }
    remainder = std::move(r);
  }
};

}  // namespace pbi
