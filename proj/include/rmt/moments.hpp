#pragma once

#include <cstdint>

#include "rmt/haar.hpp"
#include "rmt/types.hpp"

namespace rmt::moments {

struct MomentSpec {
  haar::EnsembleKind ensemble = haar::EnsembleKind::SpecialOrthogonalEven;
  int n = 1;
  Complex r{0.0, 0.0};
  Complex phi{1.0, 0.0};  // evaluation point is e^{-phi}, Re(phi) > 0
};

struct MCEstimate {
  Complex mean{0.0, 0.0};
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  std::int64_t count = 0;
  std::int64_t rejected = 0;
};

struct PredictionBreakdown {
  Complex v_factor{0.0, 0.0};
  Complex u_factor{0.0, 0.0};
  Complex total{0.0, 0.0};
  bool includes_next_order = true;
};

// Streaming component-wise mean/variance (Welford), mergeable in fixed
// chunk order.
class WelfordC {
 public:
  void add(Complex x);
  void merge(const WelfordC& o);
  std::int64_t count() const { return count_; }
  MCEstimate estimate() const;

 private:
  std::int64_t count_ = 0;
  double mean_re_ = 0.0, mean_im_ = 0.0;
  double m2_re_ = 0.0, m2_im_ = 0.0;
};

// V(N, r) = N^{r(r-1)/2} 2^{r^2/2} G(r+1) sqrt(Gamma(2r+1)) /
//           sqrt(G(2r+1) Gamma(r+1)), principal roots anchored on the
// positive real axis (requires Re(r) > -1/2 region clear of poles).
Complex predict_V(int n, Complex r);

// Same with a real scale in place of the matrix size (the L-function side
// uses log-conductors).
Complex predict_V_base(double base, Complex r);

// Symplectic prefactor 2^{r(r-2)/2} N^{r(r+1)/2} G(r+1) sqrt(Gamma(r+1)) /
// sqrt(G(2r+1) Gamma(2r+1)).
Complex predict_V_usp(int n, Complex r);

// The bracket multiplying V in the mixed-moment formulas, including the
// e^{-2N phi} oscillatory term; next_order toggles the 1/N corrections.
Complex predict_U_so(int n, Complex r, Complex phi, bool next_order = true);
Complex predict_U_usp(int n, Complex r, Complex phi, bool next_order = true);

PredictionBreakdown predict_mixed_so(int n, Complex r, Complex phi);
PredictionBreakdown predict_mixed_usp(int n, Complex r, Complex phi);

// Two-term (leading + 1/N) approximation of
// int Lambda(1)^r Lambda(e^{-alpha}) / Lambda(e^{-gamma}) dA over SO(2N).
// Refuses |alpha - gamma| < 1e-8 (the merged limit lives in
// predict_mixed_so).
Complex predict_ratio_so(int n, Complex r, Complex alpha, Complex gamma);

// int Lambda(1)^r dA over SO(2N) = V(N,r) (1 + r(r-1)^2/(2N)).
Complex predict_moment_so(int n, Complex r);

// Monte Carlo mean of -e^{-phi} Lambda(1)^r Lambda'(e^{-phi})/Lambda(e^{-phi}).
MCEstimate mc_mixed_moment(const MomentSpec& spec, std::int64_t n_samples,
                           const haar::SamplerConfig& cfg);

// Monte Carlo mean of Lambda(1)^{K-1} Lambda(e^{-alpha})/Lambda(e^{-gamma}).
MCEstimate mc_ratio_moment(haar::EnsembleKind ensemble, int n, int k,
                           Complex alpha, Complex gamma,
                           std::int64_t n_samples,
                           const haar::SamplerConfig& cfg);

inline constexpr std::int64_t kMcChunk = 1024;

}  // namespace rmt::moments
