#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rmt/types.hpp"

namespace rmt::specfun {

// Gamma function via the Lanczos approximation (g = 7, 9 terms), with the
// reflection formula for Re(z) < 0.5.  Relative error below ~1e-13 for
// |z| <= 50.  Throws PoleError within 1e-12 of a non-positive integer.
Complex gamma(Complex z);

// Principal log-Gamma, continuous on the cut plane C \ (-inf, 0] and real
// on the positive real axis.  Requires Re(z) > 0.
Complex log_gamma(Complex z);

// Entire reciprocal 1/Gamma(z); exactly 0 at non-positive integers.
Complex recip_gamma(Complex z);

// Digamma Psi(z) = Gamma'(z)/Gamma(z) by upward recurrence into the
// asymptotic region plus the reflection formula for Re(z) < 0.5.
Complex digamma(Complex z);

// Barnes G-function.  log_barnes_g follows the branch that is real on the
// positive real axis and requires Re(z) > 0; barnes_g is defined for all z,
// descending through G(z) = G(z+1)/Gamma(z) below the axis so the zeros at
// non-positive integers come out exactly.
Complex log_barnes_g(Complex z);
Complex barnes_g(Complex z);

// Riemann zeta and its derivative by Euler-Maclaurin summation with
// Bernoulli corrections through B20.  Intended domain Re(s) >= 0.5,
// |Im(s)| <= 100.  Throws PoleError within 1e-12 of s = 1.
Complex zeta(Complex s);
Complex zeta_prime(Complex s);

// z(x) = 1/(1 - e^{-x}); poles on the lattice 2*pi*i*k.
Complex zfun(Complex x);

// x * z(x), analytic at 0; Taylor series below |x| = 1e-3 where the direct
// quotient cancels.
Complex xzfun(Complex x);

// g(s) = Gamma(1-s)/Gamma(1+s).
Complex gfun(Complex s);

// n!! with (-1)!! = 0!! = 1.  Guarded against uint64 overflow (n <= 33).
std::uint64_t double_factorial(int n);

struct ContinuedSqrt {
  std::vector<Complex> values;
  double closure_residual;
};

// Square roots along a closed path with the argument unwrapped cumulatively;
// closure_residual measures whether the branch returns to itself after one
// loop.  Throws ZeroOnPath if any input has modulus below 1e-300.
ContinuedSqrt sqrt_continued(std::span<const Complex> path_values);

}  // namespace rmt::specfun
