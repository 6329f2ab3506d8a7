#include "rmt/excised.hpp"

#include <algorithm>
#include <cmath>

#include "rmt/charpoly.hpp"
#include "rmt/moments.hpp"
#include "rmt/parallel.hpp"
#include "rmt/specfun.hpp"

namespace rmt::excised {

namespace sf = rmt::specfun;

double trapezoid(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  }
  return s;
}

void normalize_unit_area(DensityCurve& curve) {
  const double area = trapezoid(curve.phi, curve.density);
  if (area <= 0.0) throw GuardError("normalize_unit_area: nonpositive area");
  for (double& d : curve.density) d /= area;
  curve.normalization = Normalization::UnitArea;
}

McDensityResult mc_excised_density(const ExcisedConfig& cfg,
                                   const haar::SamplerConfig& sampler) {
  if (cfg.n_samples < 10000) {
    throw GuardError("mc_excised_density: n_samples must be >= 1e4");
  }
  if (cfg.bins < 10) throw GuardError("mc_excised_density: bins must be >= 10");
  const double h = kPi / cfg.bins;
  const std::int64_t chunk = moments::kMcChunk;
  const std::int64_t n_chunks = (cfg.n_samples + chunk - 1) / chunk;
  struct ChunkAcc {
    std::vector<std::int64_t> counts;
    std::int64_t accepted = 0;
    std::int64_t underflow = 0;
  };
  std::vector<ChunkAcc> acc(n_chunks);
  parallel_chunks(std::size_t(n_chunks), [&](std::size_t c) {
    acc[c].counts.assign(cfg.bins, 0);
    const std::int64_t begin = std::int64_t(c) * chunk;
    const std::int64_t end = std::min(begin + chunk, cfg.n_samples);
    auto stream = haar::make_stream(haar::EnsembleKind::SpecialOrthogonalEven,
                                    cfg.n, sampler, std::uint64_t(begin));
    for (std::int64_t i = begin; i < end; ++i) {
      const haar::SpectrumSample s = stream->next();
      const charpoly::LogLambda1 l = charpoly::log_lambda_1(s);
      if (l.degenerate) {
        ++acc[c].underflow;
        continue;
      }
      if (l.value <= cfg.chi) continue;
      ++acc[c].accepted;
      for (double theta : s.angles) {
        int b = int(theta / h);
        if (b >= cfg.bins) b = cfg.bins - 1;
        ++acc[c].counts[b];
      }
    }
  });
  McDensityResult out;
  std::vector<std::int64_t> counts(cfg.bins, 0);
  std::int64_t considered = 0;
  for (const auto& a : acc) {
    for (int b = 0; b < cfg.bins; ++b) counts[b] += a.counts[b];
    out.accepted += a.accepted;
    out.underflow_excluded += a.underflow;
  }
  considered = cfg.n_samples - out.underflow_excluded;
  if (out.accepted < 100) {
    throw TooFewAccepted("mc_excised_density: " +
                         std::to_string(out.accepted) + " accepted samples");
  }
  out.acceptance_rate =
      considered > 0 ? double(out.accepted) / double(considered) : 0.0;
  out.curve.phi.resize(cfg.bins);
  out.curve.density.resize(cfg.bins);
  for (int b = 0; b < cfg.bins; ++b) {
    out.curve.phi[b] = (b + 0.5) * h;
    out.curve.density[b] = double(counts[b]) / (double(out.accepted) * h);
  }
  normalize_unit_area(out.curve);
  return out;
}

double r0_density(int n, double phi) {
  const double m = 2.0 * n - 1.0;
  const double s = std::sin(phi);
  double dirichlet;
  if (std::abs(s) < 1e-9) {
    // removable: at phi ~ 0 the ratio tends to m; at phi ~ +-pi to
    // m*cos(m phi)/cos(phi)
    dirichlet = m * std::cos(m * phi) / std::cos(phi);
  } else {
    dirichlet = std::sin(m * phi) / s;
  }
  return (m + dirichlet) / kTwoPi;
}

Complex r0_residue(int n, double phi) {
  const Complex iphi(0.0, phi);
  return 2.0 * n + 2.0 * moments::predict_U_so(n, Complex(0.0, 0.0), iphi);
}

namespace {

// V(base, r) with the sqrt factor supplied by the caller (pointwise
// principal or continued along a loop)
Complex v_with_sqrt(double base, Complex r, Complex sqrt_w) {
  return std::exp(0.5 * r * (r - 1.0) * std::log(base) +
                  0.5 * r * r * std::log(2.0)) *
         sf::barnes_g(r + 1.0) * sqrt_w;
}

Complex w_ratio(Complex r) {
  // Gamma(2r+1) / (G(2r+1) Gamma(r+1))
  return sf::gamma(2.0 * r + 1.0) /
         (sf::barnes_g(2.0 * r + 1.0) * sf::gamma(r + 1.0));
}

struct LoopResult {
  Complex residue;
  double abs_sum = 0.0;  // integrand magnitude scale, same normalization
  double first_loop_closure = 0.0;
};

// a_{-1} coefficient at `center` of e^{-xi r}/r * V_base(r) * bracket(r),
// by a double loop so branch points of the square root close up.
LoopResult double_loop_residue(double base, double xi,
                               const std::function<Complex(Complex)>& bracket,
                               Complex center, double rho, int points) {
  std::vector<Complex> pts(points);
  std::vector<Complex> w(2 * points);
  for (int j = 0; j < points; ++j) {
    const double t = kTwoPi * j / points;
    pts[j] = center + rho * Complex(std::cos(t), std::sin(t));
  }
  std::vector<Complex> wv(points);
  for (int j = 0; j < points; ++j) wv[j] = w_ratio(pts[j]);
  for (int j = 0; j < points; ++j) {
    w[j] = wv[j];
    w[j + points] = wv[j];
  }
  const sf::ContinuedSqrt single = sf::sqrt_continued(std::span(wv));
  const sf::ContinuedSqrt sq = sf::sqrt_continued(std::span(w));
  Complex acc(0.0, 0.0);
  double acc_abs = 0.0;
  for (int j = 0; j < 2 * points; ++j) {
    const Complex r = pts[j % points];
    const double t = kTwoPi * (j % points) / points;
    const Complex dr = Complex(0.0, rho) * Complex(std::cos(t), std::sin(t));
    const Complex f = std::exp(-xi * r) / r *
                      v_with_sqrt(base, r, sq.values[j]) * bracket(r);
    acc += f * dr;
    acc_abs += std::abs(f) * rho;
  }
  acc *= kTwoPi / points;  // d theta
  acc_abs *= kTwoPi / points;
  LoopResult out;
  out.residue = acc / Complex(0.0, 2.0 * kTwoPi);  // / (4 pi i)
  out.abs_sum = acc_abs / (2.0 * kTwoPi);
  out.first_loop_closure = single.closure_residual;
  return out;
}

LoopResult residue_adaptive(double base, double xi,
                            const std::function<Complex(Complex)>& bracket,
                            Complex center, int points) {
  const double rho = 0.1;
  LoopResult coarse = double_loop_residue(base, xi, bracket, center, rho, points);
  LoopResult fine =
      double_loop_residue(base, xi, bracket, center, rho, 2 * points);
  const double scale =
      std::max({std::abs(fine.residue), std::abs(coarse.residue), 1e-30});
  // near-zero residues (the integer-center probes) sit on the roundoff
  // floor set by the integrand magnitude
  const double noise_floor = 64.0 * 2.220446049250313e-16 * fine.abs_sum;
  if (std::abs(fine.residue - coarse.residue) >
      std::max(1e-8 * scale, noise_floor)) {
    throw NonConvergence("residue quadrature did not converge under doubling");
  }
  return fine;
}

}  // namespace

Complex excised_integrand(int n, double chi, Complex r, double phi) {
  if (std::abs(r) < 1e-13) {
    throw PoleError("excised_integrand: r = 0");
  }
  const Complex iphi(0.0, phi);
  const Complex bracket =
      2.0 * n + 0.5 * r * (r - 1.0) * (r - 1.0) +
      2.0 * moments::predict_U_so(n, r, iphi, true);
  return std::exp(-chi * r) / r *
         v_with_sqrt(double(n), r, std::sqrt(w_ratio(r))) * bracket;
}

Complex residue_half_integer(double base, double xi,
                             const std::function<Complex(Complex)>& bracket,
                             int k, int circle_points) {
  if (k < 0 || k > 8) {
    throw GuardError("residue_half_integer: need 0 <= k <= 8");
  }
  const Complex center(-(2.0 * k + 1.0) / 2.0, 0.0);
  LoopResult r = residue_adaptive(base, xi, bracket, center, circle_points);
  if (r.first_loop_closure > 1e-6) {
    throw BranchNotClosed(
        "residue_half_integer: closure residual " +
        std::to_string(r.first_loop_closure) + " at k = " + std::to_string(k));
  }
  return r.residue;
}

Complex residue_at(int n, double chi, double phi, int k, int circle_points) {
  auto bracket = [n, phi](Complex r) {
    const Complex iphi(0.0, phi);
    return 2.0 * n + 0.5 * r * (r - 1.0) * (r - 1.0) +
           2.0 * moments::predict_U_so(n, r, iphi, true);
  };
  return residue_half_integer(double(n), chi, bracket, k, circle_points);
}

Complex residue_probe(int n, double chi, double phi, Complex center,
                      int circle_points) {
  auto bracket = [n, phi](Complex r) {
    const Complex iphi(0.0, phi);
    return 2.0 * n + 0.5 * r * (r - 1.0) * (r - 1.0) +
           2.0 * moments::predict_U_so(n, r, iphi, true);
  };
  return residue_adaptive(double(n), chi, bracket, center, circle_points)
      .residue;
}

DensityCurve excised_density_series(int n, double chi,
                                    std::span<const double> phi_grid,
                                    int k_max, bool unit_area) {
  if (k_max > 8) throw GuardError("excised_density_series: k_max <= 8");
  DensityCurve out;
  out.phi.assign(phi_grid.begin(), phi_grid.end());
  out.density.assign(phi_grid.size(), 0.0);
  parallel_chunks(phi_grid.size(), [&](std::size_t i) {
    Complex total = r0_residue(n, phi_grid[i]);
    for (int k = 0; k <= k_max; ++k) {
      total += residue_at(n, chi, phi_grid[i], k);
    }
    out.density[i] = total.real() / kTwoPi;
  });
  out.normalization = Normalization::RawCount;
  if (unit_area) normalize_unit_area(out);
  return out;
}

}  // namespace rmt::excised
