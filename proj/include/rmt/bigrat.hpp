#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmt/types.hpp"

namespace rmt::exact {

// Arbitrary-precision signed integer, base 2^32 limbs, little-endian.
// Just enough for fraction-free determinants of factorial matrices.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v);  // NOLINT: implicit by design

  static BigInt factorial(int n);
  static BigInt double_factorial(int n);  // n!! with (-1)!! = 0!! = 1

  bool is_zero() const { return limbs_.empty(); }
  int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }
  BigInt negated() const;
  BigInt abs() const;

  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;

  // quotient and remainder truncated toward zero; remainder has the sign
  // of the dividend
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  BigInt operator/(const BigInt& o) const;
  BigInt operator%(const BigInt& o) const;

  // division that must be exact (throws GuardError otherwise)
  BigInt divexact(const BigInt& o) const;

  static BigInt gcd(BigInt a, BigInt b);

  bool operator==(const BigInt& o) const;
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const;

  double to_double() const;
  std::string to_string() const;

 private:
  static int compare_mag(const BigInt& a, const BigInt& b);
  static BigInt add_mag(const BigInt& a, const BigInt& b);
  static BigInt sub_mag(const BigInt& a, const BigInt& b);  // |a| >= |b|
  void trim();

  std::vector<std::uint32_t> limbs_;
  bool negative_ = false;
};

// Rational with normalized sign (denominator positive) and reduced terms.
class BigRat {
 public:
  BigRat() : num_(0), den_(1) {}
  BigRat(std::int64_t v) : num_(v), den_(1) {}  // NOLINT
  BigRat(BigInt num, BigInt den);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  BigRat operator+(const BigRat& o) const;
  BigRat operator-(const BigRat& o) const;
  BigRat operator*(const BigRat& o) const;
  BigRat operator/(const BigRat& o) const;
  bool operator==(const BigRat& o) const;
  bool operator!=(const BigRat& o) const { return !(*this == o); }

  double to_double() const;
  std::string to_string() const;

 private:
  BigInt num_, den_;
};

// Bareiss fraction-free determinant of a square BigInt matrix (row-major).
BigInt determinant(std::vector<std::vector<BigInt>> m);

}  // namespace rmt::exact
