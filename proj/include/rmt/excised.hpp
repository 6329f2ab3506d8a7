#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rmt/haar.hpp"
#include "rmt/types.hpp"

namespace rmt::excised {

struct ExcisedConfig {
  int n = 12;
  double chi = -9.210340371976182;  // log(1e-4)
  int bins = 100;
  std::int64_t n_samples = 100000;
  std::vector<double> phi_grid;
};

enum class Normalization { UnitArea, RawCount };

struct DensityCurve {
  std::vector<double> phi;
  std::vector<double> density;
  Normalization normalization = Normalization::RawCount;
};

struct McDensityResult {
  DensityCurve curve;
  double acceptance_rate = 0.0;
  std::int64_t accepted = 0;
  std::int64_t underflow_excluded = 0;
};

// Normalizes in place so the trapezoid integral over phi equals 1.
void normalize_unit_area(DensityCurve& curve);

double trapezoid(std::span<const double> x, std::span<const double> y);

// Histogram over (0, pi) of the eigenangles of samples passing the cut
// log Lambda(1) > chi, unit-area normalized.
McDensityResult mc_excised_density(const ExcisedConfig& cfg,
                                   const haar::SamplerConfig& sampler);

// One-level density of the full SO(2N) ensemble:
// (2N - 1 + sin((2N-1) phi)/sin(phi)) / (2 pi), the phi -> 0 limit included.
double r0_density(int n, double phi);

// The r = 0 residue, complex form 2N + 2 U(N, 0, i phi).
Complex r0_residue(int n, double phi);

// Integrand of the excised-density r-integral,
// e^{-chi r}/r * V(N, r) * (2N + r(r-1)^2 + 2 U(N, r, i phi)),
// with sqrt(Gamma/G) by principal branch at the given point.
Complex excised_integrand(int n, double chi, Complex r, double phi);

// Residue at r = -(2k+1)/2 by circle quadrature with the square root of
// Gamma(2r+1)/(G(2r+1) Gamma(r+1)) carried around the loop.
Complex residue_at(int n, double chi, double phi, int k,
                   int circle_points = 256);

// Residue probe by circle quadrature around an arbitrary real center;
// r = 0 recovers r0_residue, integer centers (-1, -2, ...) vanish.
Complex residue_probe(int n, double chi, double phi, Complex center,
                      int circle_points = 256);

// (1/2pi) Re[residue_at_zero + sum_{k=0}^{k_max} residue_k] on the grid.
DensityCurve excised_density_series(int n, double chi,
                                    std::span<const double> phi_grid,
                                    int k_max, bool unit_area = false);

// --- shared residue core -------------------------------------------------
//
// Residue at r = -(2k+1)/2 of  e^{-xi r}/r * V_base(r) * bracket(r)  where
// V_base(r) = base^{r(r-1)/2} 2^{r^2/2} G(r+1) sqrt(W(r)) / sqrt(Gamma(r+1))
// and W = Gamma(2r+1)/G(2r+1) is carried around the circle by continued
// square root.  The arithmetic module reuses this with its own bracket.
Complex residue_half_integer(double base, double xi,
                             const std::function<Complex(Complex)>& bracket,
                             int k, int circle_points);

}  // namespace rmt::excised
