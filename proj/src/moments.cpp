#include "rmt/moments.hpp"

#include <cmath>
#include <vector>

#include "rmt/charpoly.hpp"
#include "rmt/parallel.hpp"
#include "rmt/specfun.hpp"

namespace rmt::moments {

namespace sf = rmt::specfun;

namespace {

void guard_half_integer_pole(Complex r) {
  // Gamma(2r+1)/G(2r+1) square root has branch points at the negative
  // half-integers; the predictors are single-point evaluations and refuse
  // to sit on one.
  const double two_r = 2.0 * r.real();
  const double k = std::round(two_r);
  if (k <= -1.0 && std::abs(r.imag()) < 1e-12 &&
      std::abs(two_r - k) < 2e-12) {
    throw PoleError("predictor: r at a negative half-integer");
  }
}

Complex log_v_so(double n, Complex r) {
  return 0.5 * r * (r - 1.0) * std::log(n) + 0.5 * r * r * std::log(2.0) +
         sf::log_barnes_g(r + 1.0) + 0.5 * sf::log_gamma(2.0 * r + 1.0) -
         0.5 * sf::log_barnes_g(2.0 * r + 1.0) -
         0.5 * sf::log_gamma(r + 1.0);
}

Complex log_v_usp(double n, Complex r) {
  return 0.5 * r * r * std::log(2.0) + 0.5 * r * (r + 1.0) * std::log(n) +
         sf::log_barnes_g(r + 1.0) + 0.5 * sf::log_gamma(r + 1.0) -
         0.5 * sf::log_barnes_g(2.0 * r + 1.0) -
         0.5 * sf::log_gamma(2.0 * r + 1.0);
}

}  // namespace

Complex predict_V(int n, Complex r) {
  guard_half_integer_pole(r);
  if (r == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
  return std::exp(log_v_so(n, r));
}

Complex predict_V_base(double base, Complex r) {
  guard_half_integer_pole(r);
  if (base <= 0.0) throw GuardError("predict_V_base: base must be positive");
  if (r == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
  return std::exp(log_v_so(base, r));
}

Complex predict_V_usp(int n, Complex r) {
  guard_half_integer_pole(r);
  if (r == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
  return std::exp(log_v_usp(n, r));
}

// The 1/N coefficients below follow from the residue bookkeeping with
// J = (K-1)(K-2)/2 M (orthogonal) and J = K(K-1)/2 M (symplectic); both
// were pinned against the exact finite-N contour values of the ratios
// theorem, which resolve the next-to-leading coefficient unambiguously.
Complex predict_U_so(int n, Complex r, Complex phi, bool next_order) {
  const double N = n;
  const Complex zm = sf::zfun(-phi);
  const Complex zp = sf::zfun(phi);
  const Complex zm2 = sf::zfun(-2.0 * phi);
  const Complex z2 = sf::zfun(2.0 * phi);
  const Complex ratio_pow = std::exp(r * (std::log(zm) - std::log(zp)));
  Complex bracket = (r * zm - zm2);
  Complex osc = z2 * ratio_pow;
  if (next_order) {
    bracket *= 1.0 + r * (r - 1.0) * (r - 1.0) / (4.0 * N);
    bracket -= zp * zm * r * (r - 1.0) / (2.0 * N);
    osc *= 1.0 + r * (r - 1.0) / (2.0 * N) * (zp - zm + 0.5 * (r - 1.0));
  }
  return bracket - std::exp(-2.0 * N * phi) * osc;
}

Complex predict_U_usp(int n, Complex r, Complex phi, bool next_order) {
  const double N = n;
  const Complex zm = sf::zfun(-phi);
  const Complex zp = sf::zfun(phi);
  const Complex zm2 = sf::zfun(-2.0 * phi);
  const Complex ratio_pow = std::exp(r * (std::log(zm) - std::log(zp)));
  Complex bracket = r * zm + zm2;
  Complex osc = zm2 * ratio_pow;
  if (next_order) {
    // rho = J/M = r(r+1)/2 for the symplectic core integrals
    bracket *= 1.0 + r * (r + 1.0) * (r + 1.0) / (4.0 * N);
    bracket -= zp * zm * r * (r + 1.0) / (2.0 * N);
    osc *= 1.0 + r * (r + 1.0) / (2.0 * N) * (zp - zm + 0.5 * (r + 1.0));
  }
  return bracket - std::exp(-2.0 * N * phi) * osc;
}

PredictionBreakdown predict_mixed_so(int n, Complex r, Complex phi) {
  PredictionBreakdown out;
  out.v_factor = predict_V(n, r);
  out.u_factor = predict_U_so(n, r, phi, true);
  out.total = out.v_factor * out.u_factor;
  out.includes_next_order = true;
  return out;
}

PredictionBreakdown predict_mixed_usp(int n, Complex r, Complex phi) {
  PredictionBreakdown out;
  out.v_factor = predict_V_usp(n, r);
  out.u_factor = predict_U_usp(n, r, phi, true);
  out.total = out.v_factor * out.u_factor;
  out.includes_next_order = true;
  return out;
}

Complex predict_ratio_so(int n, Complex r, Complex alpha, Complex gamma) {
  if (std::abs(alpha - gamma) < 1e-8) {
    throw GuardError(
        "predict_ratio_so: |alpha - gamma| < 1e-8; use the merged moment");
  }
  if (gamma.real() <= 0.0) {
    throw GuardError("predict_ratio_so: Re(gamma) must be positive");
  }
  guard_half_integer_pole(r);
  const double N = n;
  const Complex z2g = sf::zfun(2.0 * gamma);
  const Complex za = sf::zfun(alpha);
  const Complex zma = sf::zfun(-alpha);
  const Complex zg = sf::zfun(gamma);
  const Complex zmg = sf::zfun(-gamma);
  const Complex zag = sf::zfun(alpha + gamma);
  const Complex zmag = sf::zfun(-alpha + gamma);
  const Complex pow_ag =
      std::exp(r * (std::log(za) - std::log(zg)));  // z(a)^r / z(g)^r
  const Complex pow_mag = std::exp(r * (std::log(zma) - std::log(zg)));
  const Complex c1 =
      z2g * pow_ag / zag *
      (1.0 + r * (r - 1.0) / (2.0 * N) * (zma - zmg + 0.5 * (r - 1.0)));
  const Complex c2 =
      std::exp(-2.0 * N * alpha) * z2g * pow_mag / zmag *
      (1.0 + r * (r - 1.0) / (2.0 * N) * (za - zmg + 0.5 * (r - 1.0)));
  const Complex gfac =
      (r == Complex(0.0, 0.0))
          ? Complex(1.0, 0.0)
          : std::exp(sf::log_barnes_g(r + 1.0) +
                     0.5 * sf::log_gamma(2.0 * r + 1.0) -
                     0.5 * sf::log_barnes_g(2.0 * r + 1.0) -
                     0.5 * sf::log_gamma(r + 1.0));
  const Complex lead = std::exp(0.5 * r * r * std::log(2.0) +
                                0.5 * r * (r - 1.0) * std::log(N));
  return lead * (c1 + c2) * gfac;
}

Complex predict_moment_so(int n, Complex r) {
  return predict_V(n, r) * (1.0 + r * (r - 1.0) * (r - 1.0) / (4.0 * n));
}

void WelfordC::add(Complex x) {
  ++count_;
  const double dre = x.real() - mean_re_;
  const double dim = x.imag() - mean_im_;
  mean_re_ += dre / count_;
  mean_im_ += dim / count_;
  m2_re_ += dre * (x.real() - mean_re_);
  m2_im_ += dim * (x.imag() - mean_im_);
}

void WelfordC::merge(const WelfordC& o) {
  if (o.count_ == 0) return;
  if (count_ == 0) {
    *this = o;
    return;
  }
  const std::int64_t total = count_ + o.count_;
  const double dre = o.mean_re_ - mean_re_;
  const double dim = o.mean_im_ - mean_im_;
  m2_re_ += o.m2_re_ + dre * dre * double(count_) * double(o.count_) / total;
  m2_im_ += o.m2_im_ + dim * dim * double(count_) * double(o.count_) / total;
  mean_re_ += dre * double(o.count_) / total;
  mean_im_ += dim * double(o.count_) / total;
  count_ = total;
}

MCEstimate WelfordC::estimate() const {
  MCEstimate e;
  e.count = count_;
  e.mean = Complex(mean_re_, mean_im_);
  if (count_ >= 2) {
    e.stderr_re = std::sqrt(m2_re_ / (count_ - 1) / count_);
    e.stderr_im = std::sqrt(m2_im_ / (count_ - 1) / count_);
  }
  return e;
}

namespace {

template <class PerSample>
MCEstimate run_mc(haar::EnsembleKind ensemble, int n,
                  const haar::SamplerConfig& cfg, std::int64_t n_samples,
                  PerSample&& per_sample) {
  const std::int64_t n_chunks = (n_samples + kMcChunk - 1) / kMcChunk;
  std::vector<WelfordC> acc(n_chunks);
  std::vector<std::int64_t> rejected(n_chunks, 0);
  parallel_chunks(std::size_t(n_chunks), [&](std::size_t c) {
    const std::int64_t begin = std::int64_t(c) * kMcChunk;
    const std::int64_t end = std::min(begin + kMcChunk, n_samples);
    auto stream = haar::make_stream(ensemble, n, cfg, std::uint64_t(begin));
    for (std::int64_t i = begin; i < end; ++i) {
      const haar::SpectrumSample s = stream->next();
      try {
        acc[c].add(per_sample(s));
      } catch (const DegenerateSpectrum&) {
        ++rejected[c];
      }
    }
  });
  WelfordC total;
  std::int64_t rej = 0;
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    total.merge(acc[c]);
    rej += rejected[c];
  }
  MCEstimate e = total.estimate();
  e.rejected = rej;
  return e;
}

}  // namespace

MCEstimate mc_mixed_moment(const MomentSpec& spec, std::int64_t n_samples,
                           const haar::SamplerConfig& cfg) {
  if (n_samples < 100) {
    throw GuardError("mc_mixed_moment: n_samples must be >= 100");
  }
  const Complex s = std::exp(-spec.phi);
  const Complex r = spec.r;
  return run_mc(spec.ensemble, spec.n, cfg, n_samples,
                [s, r](const haar::SpectrumSample& sample) {
                  const charpoly::LogLambda1 l = charpoly::log_lambda_1(sample);
                  if (l.degenerate) {
                    throw DegenerateSpectrum("mc_mixed_moment");
                  }
                  return -s * std::exp(r * l.value) *
                         charpoly::log_deriv(sample, s);
                });
}

MCEstimate mc_ratio_moment(haar::EnsembleKind ensemble, int n, int k,
                           Complex alpha, Complex gamma,
                           std::int64_t n_samples,
                           const haar::SamplerConfig& cfg) {
  if (k < 1) throw GuardError("mc_ratio_moment: k must be >= 1");
  if (gamma.real() <= 0.0) {
    throw GuardError("mc_ratio_moment: Re(gamma) must be positive");
  }
  const Complex ea = std::exp(-alpha);
  const Complex eg = std::exp(-gamma);
  const double km1 = k - 1;
  return run_mc(ensemble, n, cfg, n_samples,
                [ea, eg, km1](const haar::SpectrumSample& sample) {
                  const charpoly::LogLambda1 l = charpoly::log_lambda_1(sample);
                  if (l.degenerate && km1 > 0) {
                    throw DegenerateSpectrum("mc_ratio_moment");
                  }
                  return std::exp(km1 * l.value +
                                  charpoly::log_lambda_at(sample, ea) -
                                  charpoly::log_lambda_at(sample, eg));
                });
}

}  // namespace rmt::moments
