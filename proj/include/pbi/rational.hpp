#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "pbi/bigint.hpp"

namespace pbi {

// Exact rational number. Always normalized: positive denominator,
// gcd(|num|, den) == 1, zero is 0/1. All arithmetic is exact; decimal
// rendering happens only at output boundaries.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.is_negative()) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1) && !g.is_zero()) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    if (num_.is_zero()) den_ = 1;
  }

  // Accepts "3", "-7", "9/10" and finite decimals such as "0.95". Decimals
  // are converted exactly (never through binary floating point).
  static Rational parse(std::string_view text) {
    auto fail = [] { throw std::invalid_argument("Rational: invalid literal"); };
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
      text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t'))
      text.remove_suffix(1);
    if (text.empty()) fail();

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
      negative = text.front() == '-';
      text.remove_prefix(1);
    }
    auto is_digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };

    Rational magnitude;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      std::string_view num = text.substr(0, slash);
      std::string_view den = text.substr(slash + 1);
      if (!is_digits(num) || !is_digits(den)) fail();
      magnitude = Rational(BigInt::from_decimal(num), BigInt::from_decimal(den));
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
      std::string_view whole = text.substr(0, dot);
      std::string_view frac = text.substr(dot + 1);
      if (!is_digits(whole) || !is_digits(frac)) fail();
      if (frac.size() > 100000)
        throw std::invalid_argument("Rational: decimal literal too long");
      BigInt scale = BigInt::pow10(static_cast<unsigned>(frac.size()));
      BigInt value = BigInt::from_decimal(whole) * scale +
                     BigInt::from_decimal(frac);
      magnitude = Rational(std::move(value), std::move(scale));
    } else {
      if (!is_digits(text)) fail();
      magnitude = Rational(BigInt::from_decimal(text), BigInt(1));
    }
    return negative ? -magnitude : magnitude;
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_negative() const { return num_.is_negative(); }
  bool is_integer() const { return den_ == BigInt(1); }

  Rational operator-() const {
    Rational result = *this;
    result.num_ = -result.num_;
    return result;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;

  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    // Denominators are positive, so cross-multiplication preserves order.
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  BigInt floor() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (!r.is_zero() && num_.is_negative()) q -= 1;
    return q;
  }

  BigInt ceil() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (!r.is_zero() && !num_.is_negative()) q += 1;
    return q;
  }

  // "11/210", or just "10" when the value is an integer.
  std::string to_fraction_string() const {
    std::string out = num_.to_string();
    if (!is_integer()) {
      out.push_back('/');
      out += den_.to_string();
    }
    return out;
  }

  // Fixed-point rendering with `precision` fractional digits, rounding
  // half to even. precision 0 renders an integer.
  std::string to_decimal_string(unsigned precision) const {
    BigInt scaled = num_.abs() * BigInt::pow10(precision);
    BigInt q, r;
    BigInt::divmod(scaled, den_, q, r);
    auto cmp = r + r <=> den_;
    if (cmp == std::strong_ordering::greater ||
        (cmp == std::strong_ordering::equal && q.is_odd())) {
      q += 1;
    }
    std::string digits = q.to_string();
    if (digits.size() < precision + 1)
      digits.insert(0, precision + 1 - digits.size(), '0');
    std::string out;
    if (num_.is_negative() && !q.is_zero()) out.push_back('-');
    out += digits.substr(0, digits.size() - precision);
    if (precision > 0) {
      out.push_back('.');
      out += digits.substr(digits.size() - precision);
    }
    return out;
  }

 private:
  BigInt num_;
  BigInt den_;
};

inline Rational abs(const Rational& value) {
  return value.is_negative() ? -value : value;
}

}  // namespace pbi
