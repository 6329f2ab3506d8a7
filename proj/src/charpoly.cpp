#include "rmt/charpoly.hpp"

#include <cmath>

namespace rmt::charpoly {

namespace {
constexpr double kDegenerateTol = 1e-12;
constexpr double kEigenTol = 1e-10;
constexpr double kLogFloor = -700.0;
}  // namespace

Complex log_lambda_at(const haar::SpectrumSample& sample, Complex s) {
  // (1 - s e^{-i t})(1 - s e^{i t}) = 1 - 2 s cos t + s^2
  Complex acc(0.0, 0.0);
  const Complex s2 = s * s;
  for (double theta : sample.angles) {
    acc += std::log(1.0 - 2.0 * s * std::cos(theta) + s2);
  }
  return acc;
}

Complex lambda_at(const haar::SpectrumSample& sample, Complex s) {
  return std::exp(log_lambda_at(sample, s));
}

LogLambda1 log_lambda_1(const haar::SpectrumSample& sample) {
  LogLambda1 out;
  double acc = 0.0;
  for (double theta : sample.angles) {
    if (theta < kDegenerateTol) {
      out.degenerate = true;
      theta = kDegenerateTol;
    }
    // 2 - 2 cos t = 4 sin^2(t/2)
    acc += 2.0 * std::log(2.0 * std::sin(0.5 * theta));
  }
  out.value = std::max(acc, kLogFloor);
  if (acc < kLogFloor) out.degenerate = true;
  return out;
}

Complex log_deriv(const haar::SpectrumSample& sample, Complex s) {
  Complex acc(0.0, 0.0);
  const Complex s2 = s * s;
  for (double theta : sample.angles) {
    const double c = std::cos(theta);
    const Complex denom = 1.0 - 2.0 * s * c + s2;
    if (std::abs(denom) < kEigenTol * (1.0 + std::norm(s))) {
      throw NearEigenvalue("log_deriv: s within 1e-10 of an eigenvalue");
    }
    acc += (2.0 * s - 2.0 * c) / denom;
  }
  return acc;
}

Complex lambda_pow(const haar::SpectrumSample& sample, Complex r) {
  const LogLambda1 l = log_lambda_1(sample);
  if (l.degenerate) {
    throw DegenerateSpectrum("lambda_pow: degenerate spectrum (theta ~ 0)");
  }
  return std::exp(r * l.value);
}

}  // namespace rmt::charpoly
