#include "rmt/identities.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rmt/specfun.hpp"

namespace rmt::identities {

using exact::BigInt;
using exact::BigRat;

namespace {

void check_k(int k, int lo, int hi) {
  if (k < lo || k > hi) {
    throw GuardError("identities: k out of range [" + std::to_string(lo) +
                     ", " + std::to_string(hi) + "]");
  }
}

// Exact determinant of a matrix with entries 1/Gamma(arg(i,j)).  Each row i
// is scaled by (a_i - 1)! where a_i = max positive argument in the row, so
// entries become integer falling factorials; the scale is divided back out.
// arg(i, j) gives the Gamma argument; rows with all arguments <= 0 force a
// zero determinant.
template <class ArgFn>
BigRat recip_gamma_det(int rows, ArgFn arg) {
  std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(rows));
  BigInt scale(1);
  for (int i = 0; i < rows; ++i) {
    int a_max = 0;
    for (int j = 0; j < rows; ++j) a_max = std::max(a_max, arg(i, j));
    if (a_max <= 0) return BigRat(0);  // entire row of exact zeros
    scale = scale * BigInt::factorial(a_max - 1);
    for (int j = 0; j < rows; ++j) {
      const int a = arg(i, j);
      if (a <= 0) {
        m[i][j] = BigInt(0);
      } else {
        // (a_max - 1)! / (a - 1)!
        BigInt e(1);
        for (int t = a; t <= a_max - 1; ++t) e = e * BigInt(t);
        m[i][j] = e;
      }
    }
  }
  return BigRat(determinant(std::move(m)), scale);
}

}  // namespace

Complex to_complex(const GammaDetValue& v) {
  Complex p(1.0, 0.0);
  for (int i = 0; i < v.two_pi_i_power; ++i) p *= Complex(0.0, kTwoPi);
  return v.coeff.to_double() * p;
}

GammaDetValue m_gamma_det(int k) {
  check_k(k, 2, 40);
  const auto arg = [k](int i, int j) { return 2 * k - 3 - i - 2 * j; };
  GammaDetValue out;
  out.coeff = BigRat(BigInt::factorial(k - 1), BigInt(1)) *
              recip_gamma_det(k - 1, arg);
  out.two_pi_i_power = k - 1;
  return out;
}

GammaDetValue m_closed_form(int k) {
  check_k(k, 2, 40);
  BigInt den(1);
  for (int j = 1; j <= k - 2; ++j) den = den * BigInt::double_factorial(2 * j - 1);
  BigInt num = BigInt::factorial(k - 1);
  if (((k - 1) * (k - 2) / 2) % 2 != 0) num = num.negated();
  GammaDetValue out;
  out.coeff = BigRat(num, den);
  out.two_pi_i_power = k - 1;
  return out;
}

Complex m_barnes_form(int k) {
  check_k(k, 2, 20);
  namespace sf = rmt::specfun;
  const double logmag =
      (k - 1) * std::log(kTwoPi) +
      0.5 * (k - 1) * (k - 3) * std::log(2.0) +
      sf::log_barnes_g(Complex(k, 0)).real() +
      0.5 * (sf::log_gamma(Complex(2 * k - 1, 0)).real() +
             sf::log_gamma(Complex(k, 0)).real()) -
      0.5 * sf::log_barnes_g(Complex(2 * k - 1, 0)).real();
  const double sign = ((k - 1) * (k - 2) / 2) % 2 == 0 ? 1.0 : -1.0;
  // i^{k-1}
  static const Complex i_pow[4] = {Complex(1, 0), Complex(0, 1), Complex(-1, 0),
                                   Complex(0, -1)};
  return sign * std::exp(logmag) * i_pow[(k - 1) % 4];
}

GammaDetValue j_gamma_det(int k) {
  check_k(k, 2, 40);
  const auto arg = [k](int i, int j) {
    if (i == k - 2) return k - 2 - 2 * j;  // final row: jump of 2
    return 2 * k - 3 - i - 2 * j;
  };
  GammaDetValue out;
  out.coeff = BigRat(BigInt::factorial(k - 1), BigInt(1)) *
              recip_gamma_det(k - 1, arg);
  out.two_pi_i_power = k - 1;
  return out;
}

bool interesting_det_relation_check(int k) {
  check_k(k, 2, 20);
  const auto arg_m = [k](int i, int j) { return 2 * k - 3 - i - 2 * j; };
  const auto arg_j = [k](int i, int j) {
    if (i == k - 2) return k - 2 - 2 * j;
    return 2 * k - 3 - i - 2 * j;
  };
  const BigRat det_m = recip_gamma_det(k - 1, arg_m);
  const BigRat det_j = recip_gamma_det(k - 1, arg_j);
  const BigRat factor(BigInt((k - 1) * (k - 2) / 2), BigInt(1));
  return factor * det_m == det_j;
}

bool vandermondian_check(std::span<const std::int64_t> x) {
  const int n = int(x.size());
  if (n < 2) throw GuardError("vandermondian_check: need at least 2 values");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (x[i] == x[j]) {
        throw GuardError("vandermondian_check: values must be distinct");
      }
    }
  }
  auto power_matrix = [&](const std::vector<int>& powers) {
    std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        BigInt v(1);
        for (int t = 0; t < powers[i]; ++t) v = v * BigInt(x[j]);
        m[i][j] = v;
      }
    }
    return m;
  };
  std::vector<int> rows_heineman(n), rows_vdm(n);
  for (int i = 0; i < n; ++i) {
    rows_vdm[i] = i;
    rows_heineman[i] = (i == n - 1) ? n : i;
  }
  const BigInt lhs = determinant(power_matrix(rows_heineman));
  BigInt sum(0);
  for (int j = 0; j < n; ++j) sum = sum + BigInt(x[j]);
  const BigInt rhs = sum * determinant(power_matrix(rows_vdm));
  return lhs == rhs;
}

bool all_zero_det_check(int k) {
  if (k < 2) throw GuardError("all_zero_det_check: k >= 2");
  check_k(k, 2, 40);
  const auto arg = [k](int i, int j) { return 2 * k - 3 - i - 2 * j; };
  return recip_gamma_det(k, arg).is_zero();
}

}  // namespace rmt::identities
