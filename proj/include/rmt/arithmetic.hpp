#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rmt/excised.hpp"
#include "rmt/types.hpp"

namespace rmt::arith {

struct CurveConfig {
  // Weierstrass coefficients a1, a2, a3, a4, a6
  std::array<std::int64_t, 5> weierstrass{0, 0, 0, 0, 0};
  std::int64_t conductor = 0;
  int omega = +1;       // root number of the untwisted curve
  double kappa = 0.0;   // central-value lower-bound constant (0 = unset)
  // a_p at bad primes (Euler-factor convention); lambda(p) = a_p/sqrt(p)
  std::map<std::int64_t, std::int64_t> bad_prime_ap;

  // y^2 + y = x^3 - x^2, conductor 11, even functional equation
  static CurveConfig e11();
};

// Projective point count N_p of the curve over F_p by direct counting
// (quadratic-character sum for p >= 5, brute force for p in {2, 3}).
std::int64_t count_points_mod_p(const CurveConfig& curve, std::int64_t p);

struct ApTable {
  std::map<std::int64_t, double> lambda;  // p -> (p + 1 - N_p)/sqrt(p)
  std::int64_t p_max = 0;
};

ApTable build_ap_table(const CurveConfig& curve, std::int64_t p_max);
void save_ap_table(const ApTable& table, const std::string& path);
ApTable load_ap_table(const std::string& path);

// Builds (or loads from RMT_CACHE_DIR when set) the table for the curve.
ApTable ap_table_cached(const CurveConfig& curve, std::int64_t p_max);

// Kronecker symbol (a | n).
int kronecker(std::int64_t a, std::int64_t n);
bool is_fundamental_discriminant(std::int64_t d);

struct TwistFamily {
  double X = 0.0;
  std::vector<std::int64_t> d;
  std::vector<double> log_conductor;  // N_d = log(sqrt(M) d / (2 pi))
};

// Positive fundamental discriminants d <= X, coprime to the conductor, with
// omega_E * kronecker(d, -M) = +1.  The trivial twist d = 1 is excluded.
TwistFamily twist_family(double X, const CurveConfig& curve);
TwistFamily family_from_dlist(std::span<const std::int64_t> ds,
                              const CurveConfig& curve);

// Truncated Euler product A~_E(alpha, gamma) with K = r + 1 and the
// repeated zero arguments raised to the exponent r (real r permitted).
Complex a_e_tilde(Complex alpha, Complex gamma, double r,
                  const CurveConfig& curve, const ApTable& table);

// d/dalpha A~_E(alpha, gamma) at alpha = gamma = phi by Richardson-
// extrapolated central differences (h = 1e-4).
Complex a_e_tilde_deriv(Complex phi, double r, const CurveConfig& curve,
                        const ApTable& table);

// V(N_d, r) * U_E(N_d, r, phi) per the mixed-moment prediction.
Complex predict_mixed_lfun(std::int64_t d, double r, Complex phi,
                           const CurveConfig& curve, const ApTable& table);

// Scalar functions entering the U_E bracket; swapping them for their
// random-matrix counterparts (zeta(1+x) -> z(x), A~ -> 1, Gamma-ratio -> 1)
// reproduces the SO(2N) bracket, which the tests exercise.  The arithmetic
// functions take (phi, r) because A~ carries the K = r + 1 exponent
// structure, which matters when r runs around a residue circle.
struct LfunParts {
  std::function<Complex(Complex)> zeta_at_1_plus;        // zeta(1 + x)
  std::function<Complex(Complex)> zeta_logderiv_1_plus;  // zeta'/zeta(1 + x)
  std::function<Complex(Complex, Complex)> arith_plus;   // A~(i phi, i phi)
  std::function<Complex(Complex, Complex)> arith_minus;  // A~(-i phi, i phi)
  std::function<Complex(Complex, Complex)> arith_deriv;  // A~^1(i phi)
  std::function<Complex(Complex)> x_factor;  // e^{-2 i N phi} ratio factor
};

Complex u_e_bracket(double log_conductor, Complex r, Complex phi,
                    const LfunParts& parts);

// The returned closures borrow curve and table; keep both alive while the
// parts are in use.
LfunParts production_parts(std::int64_t d, const CurveConfig& curve,
                           const ApTable& table);

using excised::DensityCurve;

// eq. (r = 0 term): (1/2pi) sum_d [ 2 N_d + Psi(1+i phi) + Psi(1-i phi)
//   + 2 ( -A~ zeta'/zeta(1+2i phi) + A~^1
//         - X_d(phi) zeta(1+2i phi) A~(-i phi, i phi) ) ], real part.
DensityCurve r0_density_lfun(const TwistFamily& family,
                             std::span<const double> phi_grid,
                             const CurveConfig& curve, const ApTable& table);

// Residue series with the half-integer terms computed by the shared
// branch-tracked circle quadrature; k_max counts half-integer residues
// beyond the r = 0 term (k_max = 0 reproduces r0_density_lfun).
DensityCurve excised_prediction_lfun(const TwistFamily& family,
                                     std::span<const double> phi_grid,
                                     const CurveConfig& curve,
                                     const ApTable& table, int k_max);

struct ZeroDataset {
  std::vector<std::int64_t> d;
  std::vector<double> gamma;
};

// UTF-8 text, one `d,gamma` record per line, `#` comments ignored.
ZeroDataset ingest_zero_data(const std::string& path);
DensityCurve zero_histogram(const ZeroDataset& data, int bins, double phi_max);

std::vector<std::int64_t> read_dlist(const std::string& path);

}  // namespace rmt::arith
