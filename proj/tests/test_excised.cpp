#include <cmath>

#include "doctest.h"
#include "rmt/excised.hpp"
#include "rmt/moments.hpp"

using namespace rmt;
namespace ex = rmt::excised;

TEST_CASE("r0_density values and eigenvalue count") {
  // n=1: constant 1/pi
  CHECK(ex::r0_density(1, 0.3) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  // phi -> 0 limit at n = 12: (23 + 23)/(2 pi)
  CHECK(ex::r0_density(12, 1e-12) ==
        doctest::Approx(46.0 / kTwoPi).epsilon(1e-9));
  // integral over (-pi, pi) equals 2N (periodic trapezoid is spectral)
  const int n = 9;
  const int m = 4096;
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double phi = -kPi + kTwoPi * (i + 0.5) / m;
    s += ex::r0_density(n, phi) * (kTwoPi / m);
  }
  CHECK(std::abs(s - 2.0 * n) < 1e-8);
}

TEST_CASE("r0 residue equals the classical density") {
  for (double phi : {0.2, 0.9, 2.5}) {
    const Complex res = ex::r0_residue(12, phi);
    CHECK(res.real() / kTwoPi ==
          doctest::Approx(ex::r0_density(12, phi)).epsilon(1e-12));
  }
}

TEST_CASE("excised integrand shares the moments code path on the real axis") {
  const int n = 12;
  const double chi = std::log(1e-4);
  const double phi = 0.8;
  const Complex r(1.7, 0.0);
  const Complex direct = ex::excised_integrand(n, chi, r, phi);
  const Complex iphi(0.0, phi);
  const Complex via_moments =
      std::exp(-chi * r) / r * moments::predict_V(n, r) *
      (2.0 * n + 0.5 * r * (r - 1.0) * (r - 1.0) +
       2.0 * moments::predict_U_so(n, r, iphi));
  CHECK(std::abs(direct - via_moments) < 1e-12 * std::abs(via_moments));
}

TEST_CASE("residue at zero by quadrature") {
  const int n = 12;
  const double chi = std::log(1e-4);
  for (double phi : {0.4, 1.3}) {
    const Complex probe =
        ex::residue_probe(n, chi, phi, Complex(0.0, 0.0), 128);
    const Complex expect = ex::r0_residue(n, phi);
    CHECK(std::abs(probe - expect) < 1e-8 * std::abs(expect));
  }
}

TEST_CASE("no residues at negative integers") {
  const int n = 12;
  const double chi = std::log(1e-4);
  const double phi = 0.6;
  const Complex neighbor = ex::residue_at(n, chi, phi, 0, 128);
  for (double c : {-1.0, -2.0}) {
    const Complex probe = ex::residue_probe(n, chi, phi, Complex(c, 0.0), 128);
    CHECK(std::abs(probe) < 1e-8 * std::abs(neighbor));
  }
}

TEST_CASE("branch closure at half-integer poles") {
  const int n = 12;
  for (int k : {0, 1, 2}) {
    CHECK_NOTHROW((void)ex::residue_at(n, std::log(1e-4), 0.7, k, 128));
  }
}

TEST_CASE("chi scaling: exact at k = 0, polynomial-corrected at k >= 1") {
  const int n = 12;
  const double phi = 0.7;
  const double chi1 = std::log(1e-4), chi2 = -2.0;
  const Complex a0 = ex::residue_at(n, chi1, phi, 0, 128);
  const Complex b0 = ex::residue_at(n, chi2, phi, 0, 128);
  const double expect0 = std::exp(0.5 * (chi1 - chi2));
  CHECK(std::abs(a0 / b0 - Complex(expect0, 0.0)) < 1e-6 * expect0);
  // k = 1: the pole has order 2, so the pure exponential ratio acquires a
  // linear-in-chi correction; verify the residue against the Laurent data
  // res(chi) = e^{(k+1/2) chi} (h1 - chi h2) extracted from two cutoffs
  const Complex a1 = ex::residue_at(n, chi1, phi, 1, 128);
  const Complex b1 = ex::residue_at(n, chi2, phi, 1, 128);
  const Complex c1 = ex::residue_at(n, 0.0, phi, 1, 128);
  // solve for h1, h2 from chi = 0 and chi = chi2, predict chi = chi1
  const Complex h1 = c1;
  const Complex h2 = (h1 - b1 * std::exp(-1.5 * chi2)) / chi2;
  const Complex predict = std::exp(1.5 * chi1) * (h1 - chi1 * h2);
  CHECK(std::abs(predict - a1) < 1e-6 * std::abs(a1));
}

TEST_CASE("residues are conjugate-symmetric in phi") {
  // contributions from phi and -phi sum to a real value, so the Re[] the
  // density takes discards only the odd part
  const int n = 12;
  const double chi = std::log(1e-4);
  for (double phi : {0.6, 1.7}) {
    const Complex plus = ex::r0_residue(n, phi) + ex::residue_at(n, chi, phi, 0);
    const Complex minus =
        ex::r0_residue(n, -phi) + ex::residue_at(n, chi, -phi, 0);
    CHECK(std::abs(std::imag(plus + minus)) < 1e-8 * std::abs(plus));
  }
}

TEST_CASE("series density is real and the chi -> -inf limit is R0") {
  const int n = 12;
  const std::vector<double> grid = {0.35, 0.8, 1.6, 2.4};
  const auto series = ex::excised_density_series(n, -60.0, grid, 3, false);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(series.density[i] ==
          doctest::Approx(ex::r0_density(n, grid[i])).epsilon(1e-9));
  }
}

TEST_CASE("mc density: cut that never binds reproduces the full ensemble") {
  ex::ExcisedConfig cfg;
  cfg.n = 6;
  cfg.chi = -1e9;
  cfg.bins = 24;
  cfg.n_samples = 20000;
  haar::SamplerConfig sampler;
  sampler.seed = 31;
  const auto mc = ex::mc_excised_density(cfg, sampler);
  CHECK(mc.acceptance_rate == 1.0);
  // compare to the unit-area R0 curve: a loose sup check at this sample size
  std::vector<double> r0(cfg.bins);
  for (int b = 0; b < cfg.bins; ++b) r0[b] = ex::r0_density(cfg.n, mc.curve.phi[b]);
  ex::DensityCurve r0c;
  r0c.phi = mc.curve.phi;
  r0c.density = r0;
  ex::normalize_unit_area(r0c);
  double sup = 0.0;
  for (int b = 0; b < cfg.bins; ++b) {
    sup = std::max(sup, std::abs(r0c.density[b] - mc.curve.density[b]));
  }
  CHECK(sup < 0.05);
}

TEST_CASE("mc density determinism and acceptance bookkeeping") {
  ex::ExcisedConfig cfg;
  cfg.n = 4;
  cfg.chi = std::log(1e-2);
  cfg.bins = 12;
  cfg.n_samples = 10000;
  haar::SamplerConfig sampler;
  sampler.seed = 32;
  const auto a = ex::mc_excised_density(cfg, sampler);
  const auto b = ex::mc_excised_density(cfg, sampler);
  CHECK(a.curve.density == b.curve.density);
  CHECK(a.accepted == b.accepted);
  CHECK(a.acceptance_rate < 1.0);
  CHECK(a.acceptance_rate > 0.0);
}

TEST_CASE("too-restrictive cut reports TooFewAccepted") {
  ex::ExcisedConfig cfg;
  cfg.n = 4;
  cfg.chi = 1e9;  // impossible cut
  cfg.bins = 12;
  cfg.n_samples = 10000;
  haar::SamplerConfig sampler;
  sampler.seed = 33;
  CHECK_THROWS_AS((void)ex::mc_excised_density(cfg, sampler), TooFewAccepted);
}
