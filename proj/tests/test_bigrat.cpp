#include <cstdint>

#include "doctest.h"
#include "rmt/bigrat.hpp"
#include "rmt/rng.hpp"

using rmt::exact::BigInt;
using rmt::exact::BigRat;

TEST_CASE("BigInt arithmetic basics") {
  CHECK(BigInt::factorial(20).to_string() == "2432902008176640000");
  CHECK(BigInt::factorial(25).to_string() == "15511210043330985984000000");
  CHECK(BigInt::double_factorial(9).to_string() == "945");
  CHECK((BigInt(-7) + BigInt(3)).to_string() == "-4");
  CHECK((BigInt(1000000000) * BigInt(1000000000)).to_string() ==
        "1000000000000000000");
}

TEST_CASE("BigInt divmod round trip, random") {
  rmt::Rng rng(21, 0);
  for (int it = 0; it < 300; ++it) {
    // build operands of uneven sizes
    BigInt a(std::int64_t(rng.next_u64() >> 1));
    BigInt b(std::int64_t(rng.next_u64() >> 40) + 1);
    for (int k = 0; k < int(rng.next_u64() % 4); ++k) {
      a = a * BigInt(std::int64_t(rng.next_u64() >> 16) + 1);
    }
    for (int k = 0; k < int(rng.next_u64() % 3); ++k) {
      b = b * BigInt(std::int64_t(rng.next_u64() >> 24) + 1);
    }
    if (rng.uniform() < 0.5) a = a.negated();
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
  }
}

TEST_CASE("BigInt gcd and exact division") {
  const BigInt a = BigInt::factorial(30);
  const BigInt b = BigInt::factorial(25);
  CHECK(BigInt::gcd(a, b) == b);
  CHECK(a.divexact(b).to_string() == "17100720");  // 26*27*28*29*30
}

TEST_CASE("BigRat normalization and ops") {
  const BigRat half(BigInt(2), BigInt(4));
  CHECK(half.to_string() == "1/2");
  CHECK((half + half).to_string() == "1");
  const BigRat neg(BigInt(3), BigInt(-6));
  CHECK(neg.to_string() == "-1/2");
  CHECK((half * neg).to_string() == "-1/4");
  CHECK((half / neg).to_string() == "-1");
  CHECK(BigRat(0).is_zero());
}

TEST_CASE("determinant small cases") {
  using M = std::vector<std::vector<BigInt>>;
  CHECK(rmt::exact::determinant(M{{BigInt(5)}}).to_string() == "5");
  CHECK(rmt::exact::determinant(M{{BigInt(1), BigInt(2)},
                                  {BigInt(3), BigInt(4)}})
            .to_string() == "-2");
  // singular
  CHECK(rmt::exact::determinant(M{{BigInt(1), BigInt(2)},
                                  {BigInt(2), BigInt(4)}})
            .is_zero());
  // Vandermonde 1,2,3 -> product of differences = 2
  M v(3, std::vector<BigInt>(3));
  for (int i = 0; i < 3; ++i) {
    std::int64_t x = i + 1;
    v[i][0] = 1;
    v[i][1] = x;
    v[i][2] = x * x;
  }
  CHECK(rmt::exact::determinant(v).to_string() == "2");
}
