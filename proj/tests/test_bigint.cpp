#include "pbi/bigint.hpp"

#include <doctest.h>

#include <random>
#include <string>

using pbi::BigInt;

namespace {

std::mt19937_64 rng(20240811);

BigInt random_bigint(int max_digits, bool allow_negative = true) {
  std::uniform_int_distribution<int> digit_count(1, max_digits);
  std::uniform_int_distribution<int> digit(0, 9);
  int n = digit_count(rng);
  std::string text;
  text.reserve(n + 1);
  if (allow_negative && digit(rng) % 2 == 0) text.push_back('-');
  text.push_back(static_cast<char>('1' + digit(rng) % 9));
  for (int i = 1; i < n; ++i)
    text.push_back(static_cast<char>('0' + digit(rng)));
  return BigInt::from_decimal(text);
}

}  // namespace

TEST_CASE("small value round trips") {
  CHECK(BigInt(0).to_string() == "0");
  CHECK(BigInt(-1).to_string() == "-1");
  CHECK(BigInt(1000000000LL).to_string() == "1000000000");
  CHECK(BigInt(-123456789012345678LL).to_string() == "-123456789012345678");
  CHECK(BigInt::from_decimal("000123") == BigInt(123));
  CHECK(BigInt::from_decimal("-0") == BigInt(0));
  CHECK(BigInt::from_unsigned(18446744073709551615ULL).to_string() ==
        "18446744073709551615");
  CHECK_THROWS_AS(BigInt::from_decimal(""), std::invalid_argument);
  CHECK_THROWS_AS(BigInt::from_decimal("12a"), std::invalid_argument);
}

TEST_CASE("arithmetic agrees with native integers on small values") {
  std::uniform_int_distribution<long long> value(-1000000, 1000000);
  for (int i = 0; i < 2000; ++i) {
    long long a = value(rng);
    long long b = value(rng);
    CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
    CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
    CHECK(BigInt(a) * BigInt(b) == BigInt(a * b));
    if (b != 0) {
      CHECK(BigInt(a) / BigInt(b) == BigInt(a / b));
      CHECK(BigInt(a) % BigInt(b) == BigInt(a % b));
    }
    CHECK((BigInt(a) <=> BigInt(b)) == (a <=> b));
  }
}

TEST_CASE("ring identities on large values") {
  for (int i = 0; i < 500; ++i) {
    BigInt a = random_bigint(40);
    BigInt b = random_bigint(40);
    BigInt c = random_bigint(25);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b - b == a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * BigInt(0) == BigInt(0));
    CHECK(a * BigInt(1) == a);
  }
}

TEST_CASE("divmod reconstructs the dividend") {
  for (int i = 0; i < 1000; ++i) {
    BigInt a = random_bigint(45);
    BigInt b = random_bigint(i % 2 == 0 ? 20 : 45);
    if (b.is_zero()) continue;
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
    // Truncation: remainder carries the dividend's sign.
    if (!r.is_zero()) CHECK(r.is_negative() == a.is_negative());
  }
  CHECK_THROWS_AS(BigInt(1) / BigInt(0), std::domain_error);
}

TEST_CASE("division by known multiples is exact") {
  for (int i = 0; i < 500; ++i) {
    BigInt a = random_bigint(30);
    BigInt b = random_bigint(30);
    if (b.is_zero()) continue;
    CHECK((a * b) / b == a);
    CHECK((a * b) % b == BigInt(0));
  }
}

TEST_CASE("string round trip on random values") {
  for (int i = 0; i < 500; ++i) {
    BigInt a = random_bigint(60);
    CHECK(BigInt::from_decimal(a.to_string()) == a);
  }
}

TEST_CASE("gcd basics") {
  CHECK(BigInt::gcd(BigInt(0), BigInt(0)) == BigInt(0));
  CHECK(BigInt::gcd(BigInt(0), BigInt(7)) == BigInt(7));
  CHECK(BigInt::gcd(BigInt(12), BigInt(-18)) == BigInt(6));
  for (int i = 0; i < 300; ++i) {
    BigInt a = random_bigint(25);
    BigInt b = random_bigint(25);
    BigInt g = BigInt::gcd(a, b);
    if (g.is_zero()) {
      CHECK(a.is_zero());
      CHECK(b.is_zero());
      continue;
    }
    CHECK(a % g == BigInt(0));
    CHECK(b % g == BigInt(0));
    // g is the greatest: a/g and b/g are coprime.
    CHECK(BigInt::gcd(a / g, b / g) == BigInt(1));
  }
}

TEST_CASE("pow10") {
  CHECK(BigInt::pow10(0) == BigInt(1));
  CHECK(BigInt::pow10(1) == BigInt(10));
  CHECK(BigInt::pow10(9) == BigInt(1000000000LL));
  CHECK(BigInt::pow10(20).to_string() == "100000000000000000000");
}
