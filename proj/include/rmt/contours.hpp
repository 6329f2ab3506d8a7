#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "rmt/types.hpp"

namespace rmt::contours {

struct NestedContourSpec {
  std::vector<double> radii;  // strictly decreasing, all > |alpha|
  Complex center{0.0, 0.0};
  int points_per_circle = 256;
};

// Radii that clear the poles at 0, +-alpha while keeping |e^{N w}| small,
// so the trapezoid sums do not cancel catastrophically at large N.
NestedContourSpec default_ratios_spec(int k, Complex alpha, int n);

// Full ratios integrand over SO(2N), coefficient included; the
// z(w_j+w_k) * Vandermonde product is evaluated in the grouped form
// xzfun(w_j+w_k) (w_k-w_j)(w_k^2-w_j^2) so the pairwise singularities are
// removable by construction.
Complex ratios_integrand_so(std::span<const Complex> w, int n, int k,
                            Complex alpha, Complex gamma);

using Integrand = std::function<Complex(std::span<const Complex>)>;

// Iterated trapezoid rule over nested circles; returns the raw value of
// the iterated closed integral (no (2 pi i)^{-K} normalization).  Doubles
// points_per_circle once and throws NonConvergence if the two results
// disagree beyond tol.
Complex nested_contour_integral(const Integrand& f,
                                const NestedContourSpec& spec,
                                double tol = 1e-10);

// Same quadrature, one small circle per variable centred at centers[i].
Complex product_circle_integral(const Integrand& f,
                                std::span<const Complex> centers,
                                double radius, int points);

// Exact finite-N average int Lambda(1)^{K-1} Lambda(e^{-a})/Lambda(e^{-g}) dA
// by nested quadrature (K <= 3).
Complex ratios_contour_so(int n, int k, Complex alpha, Complex gamma,
                          const NestedContourSpec* spec = nullptr);

struct PoleAssignment {
  std::vector<int> eps;  // entries in {-1, 0, +1}, meaning {-alpha, 0, +alpha}
  bool operator<(const PoleAssignment& o) const { return eps < o.eps; }
  std::string to_string() const;
  int nonzero_count() const;
};

// One small-circle product integral per assignment epsilon in
// {-alpha, 0, +alpha}^K; the values sum to the nested integral.
std::map<PoleAssignment, Complex> residue_decomposition_so(
    int n, int k, Complex alpha, Complex gamma, double circle_radius = -1.0,
    int points = 128);

// The M and J integrals (K-1 variables on circles around 0).
Complex m_integral(int k, int points = 32);
Complex j_integral(int k, int points = 32);

// Exact finite-N moment int Lambda(1)^{K-1} dA by quadrature (K <= 4).
Complex moment_contour_so(int n, int k);

}  // namespace rmt::contours
