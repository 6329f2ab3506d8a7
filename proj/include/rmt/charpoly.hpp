#pragma once

#include "rmt/haar.hpp"
#include "rmt/types.hpp"

namespace rmt::charpoly {

// Lambda(s) = prod_j (1 - s e^{-i theta_j})(1 - s e^{i theta_j}); products
// accumulate as sums of logs with a single exponentiation.
Complex lambda_at(const haar::SpectrumSample& sample, Complex s);

// log of Lambda(s) as accumulated (imaginary part is a branch-dependent sum
// of principal logs; exp of it reproduces lambda_at exactly).
Complex log_lambda_at(const haar::SpectrumSample& sample, Complex s);

struct LogLambda1 {
  double value = 0.0;       // sum_j log(2 - 2 cos theta_j), floored at -700
  bool degenerate = false;  // some theta_j within 1e-12 of 0
};

LogLambda1 log_lambda_1(const haar::SpectrumSample& sample);

// Lambda'(s)/Lambda(s); throws NearEigenvalue when s is within 1e-10 of an
// eigenvalue.
Complex log_deriv(const haar::SpectrumSample& sample, Complex s);

// Lambda(1)^r through the real logarithm of the positive Lambda(1); throws
// DegenerateSpectrum when log_lambda_1 is flagged.
Complex lambda_pow(const haar::SpectrumSample& sample, Complex r);

}  // namespace rmt::charpoly
