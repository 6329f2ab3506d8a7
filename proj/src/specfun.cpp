#include "rmt/specfun.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

namespace rmt::specfun {

namespace {

constexpr double kPoleEps = 1e-12;
constexpr double kLatticeEps = 1e-8;
constexpr double kLogSqrt2Pi = 0.9189385332046727417803297364056176;
// log of the Glaisher-Kinkelin constant A = exp(1/12 - zeta'(-1))
constexpr double kLogGlaisher = 0.2487544770337842625473380822397992;

// Lanczos g = 7, 9 coefficients (Godfrey); good to ~15 significant digits.
constexpr int kLanczosN = 9;
constexpr double kLanczos[kLanczosN] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_nonpositive_integer(Complex z, double eps, double* dist = nullptr) {
  const double k = std::round(z.real());
  if (k > 0.5) return false;
  const double d = std::abs(z - Complex(k, 0.0));
  if (dist) *dist = d;
  return d < eps;
}

Complex lanczos_series(Complex zm1) {
  Complex x = kLanczos[0];
  for (int i = 1; i < kLanczosN; ++i) x += kLanczos[i] / (zm1 + double(i));
  return x;
}

// Valid for Re(z) >= 0.5.
Complex log_gamma_right(Complex z) {
  const Complex zm1 = z - 1.0;
  const Complex t = zm1 + 7.5;
  return kLogSqrt2Pi + (zm1 + 0.5) * std::log(t) - t +
         std::log(lanczos_series(zm1));
}

// Bernoulli numbers B2, B4, ..., B20
constexpr double kBern[10] = {1.0 / 6,      -1.0 / 30,      1.0 / 42,
                              -1.0 / 30,    5.0 / 66,       -691.0 / 2730,
                              7.0 / 6,      -3617.0 / 510,  43867.0 / 798,
                              -174611.0 / 330};

// B_{2j}/(2j)! for j = 1..10
double bern_over_fact(int j) {
  static const std::array<double, 10> table = [] {
    std::array<double, 10> t{};
    double fact = 1.0;  // (2j)!
    for (int i = 1; i <= 10; ++i) {
      fact *= (2.0 * i - 1.0) * (2.0 * i);
      t[i - 1] = kBern[i - 1] / fact;
    }
    return t;
  }();
  return table[j - 1];
}

}  // namespace

Complex gamma(Complex z) {
  double dist = 0.0;
  if (near_nonpositive_integer(z, kPoleEps, &dist)) {
    throw PoleError("gamma: pole at non-positive integer, |z - k| = " +
                    std::to_string(dist));
  }
  if (z.real() < 0.5) {
    // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1-z))
    return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
  }
  return std::exp(log_gamma_right(z));
}

Complex log_gamma(Complex z) {
  if (z.real() <= 0.0) {
    throw GuardError("log_gamma requires Re(z) > 0");
  }
  if (z.real() >= 0.5) return log_gamma_right(z);
  // shift once: log Gamma(z) = log Gamma(z+1) - log z.  The strip
  // 0 < Re(z) < 0.5 stays clear of the cut, so principal logs compose.
  return log_gamma_right(z + 1.0) - std::log(z);
}

Complex recip_gamma(Complex z) {
  if (near_nonpositive_integer(z, kPoleEps)) return Complex(0.0, 0.0);
  if (z.real() < 0.5) {
    // 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi  (entire)
    return std::sin(kPi * z) * gamma(1.0 - z) / kPi;
  }
  return std::exp(-log_gamma_right(z));
}

Complex digamma(Complex z) {
  if (near_nonpositive_integer(z, kPoleEps)) {
    throw PoleError("digamma: pole at non-positive integer");
  }
  if (z.real() < 0.5) {
    // Psi(z) = Psi(1-z) - pi cot(pi z)
    return digamma(1.0 - z) - kPi / std::tan(kPi * z);
  }
  Complex acc(0.0, 0.0);
  while (std::abs(z) < 12.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  // asymptotic: log z - 1/(2z) - sum B_{2n} / (2n z^{2n})
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex sum = std::log(z) - 0.5 * inv;
  Complex p = inv2;
  for (int n = 1; n <= 7; ++n) {
    sum -= kBern[n - 1] / (2.0 * n) * p;
    p *= inv2;
  }
  return acc + sum;
}

Complex log_barnes_g(Complex z) {
  if (z.real() <= 0.0) {
    throw GuardError("log_barnes_g requires Re(z) > 0");
  }
  // shift into the asymptotic region, G(z) = G(z+m) / prod Gamma(z+j)
  Complex shift(0.0, 0.0);
  while (z.real() < 12.0) {
    shift += log_gamma(z);
    z += 1.0;
  }
  // asymptotic expansion with w = z - 1:
  // log G(1+w) = w^2/4 + w logGamma(1+w) - (w(w+1)/2 + 1/12) log w
  //              - log A + sum_k B_{2k+2} / (2k(2k+1)(2k+2) w^{2k}),
  // the branch continuous from the positive real axis
  const Complex w = z - 1.0;
  const Complex logw = std::log(w);
  Complex s = 0.25 * w * w + w * log_gamma(1.0 + w) -
              (0.5 * w * (w + 1.0) + 1.0 / 12.0) * logw - kLogGlaisher;
  const Complex iw2 = 1.0 / (w * w);
  Complex p = iw2;
  for (int k = 1; k <= 6; ++k) {
    // B_{2k+2} indexes kBern[k]
    s += kBern[k] / (2.0 * k * (2.0 * k + 1.0) * (2.0 * k + 2.0)) * p;
    p *= iw2;
  }
  return s - shift;
}

Complex barnes_g(Complex z) {
  if (near_nonpositive_integer(z, kPoleEps)) return Complex(0.0, 0.0);
  if (z.real() >= 0.5) return std::exp(log_barnes_g(z));
  // descend: G(z) = G(z+1) / Gamma(z); 1/Gamma supplies the zeros
  Complex factor(1.0, 0.0);
  while (z.real() < 0.5) {
    factor *= recip_gamma(z);
    if (factor == Complex(0.0, 0.0)) return factor;
    z += 1.0;
  }
  return factor * std::exp(log_barnes_g(z));
}

namespace {

int zeta_cutoff(Complex s) {
  return std::max(20, int(std::ceil(3.0 + std::abs(s.imag()))));
}

}  // namespace

Complex zeta(Complex s) {
  if (std::abs(s - 1.0) < kPoleEps) throw PoleError("zeta: pole at s = 1");
  const int M = zeta_cutoff(s);
  Complex sum(0.0, 0.0);
  for (int n = 1; n < M; ++n) sum += std::exp(-s * std::log(double(n)));
  const double logM = std::log(double(M));
  const Complex Ms = std::exp(-s * logM);  // M^{-s}
  sum += Ms * double(M) / (s - 1.0);
  sum += 0.5 * Ms;
  Complex poch = s;        // (s)_{2j-1}, starts at j=1 as s
  Complex Mp = Ms / double(M);  // M^{-s-2j+1} at j=1
  for (int j = 1; j <= 10; ++j) {
    sum += bern_over_fact(j) * poch * Mp;
    poch *= (s + double(2 * j - 1)) * (s + double(2 * j));
    Mp /= double(M) * double(M);
  }
  return sum;
}

Complex zeta_prime(Complex s) {
  if (std::abs(s - 1.0) < kPoleEps) throw PoleError("zeta': pole at s = 1");
  const int M = zeta_cutoff(s);
  Complex sum(0.0, 0.0);
  for (int n = 2; n < M; ++n) {
    const double ln = std::log(double(n));
    sum -= ln * std::exp(-s * ln);
  }
  const double logM = std::log(double(M));
  const Complex Ms = std::exp(-s * logM);
  const Complex sm1 = s - 1.0;
  sum += -logM * Ms * double(M) / sm1 - Ms * double(M) / (sm1 * sm1);
  sum += -0.5 * logM * Ms;
  // derivative of B_{2j}/(2j)! * (s)_{2j-1} * M^{-s-2j+1}
  Complex Mp = Ms / double(M);
  for (int j = 1; j <= 10; ++j) {
    Complex poch(1.0, 0.0);
    Complex dpoch(0.0, 0.0);  // sum over product rule
    for (int i = 0; i <= 2 * j - 2; ++i) {
      dpoch = dpoch * (s + double(i)) + poch;
      poch *= s + double(i);
    }
    sum += bern_over_fact(j) * (dpoch - logM * poch) * Mp;
    Mp /= double(M) * double(M);
  }
  return sum;
}

namespace {

// distance to the nearest lattice point 2*pi*i*k, k integer (k = 0 allowed)
double lattice_distance(Complex x, long* k_out = nullptr) {
  const double k = std::round(x.imag() / kTwoPi);
  if (k_out) *k_out = long(k);
  return std::abs(x - Complex(0.0, kTwoPi * k));
}

}  // namespace

Complex zfun(Complex x) {
  long k = 0;
  if (lattice_distance(x, &k) < kLatticeEps) {
    throw PoleError("zfun: pole at 2*pi*i*" + std::to_string(k));
  }
  return 1.0 / (1.0 - std::exp(-x));
}

Complex xzfun(Complex x) {
  long k = 0;
  const double d = lattice_distance(x, &k);
  if (k != 0 && d < kLatticeEps) {
    throw PoleError("xzfun: pole at 2*pi*i*" + std::to_string(k));
  }
  if (std::abs(x) < 1e-3) {
    const Complex x2 = x * x;
    return 1.0 + 0.5 * x + x2 / 12.0 - x2 * x2 / 720.0;
  }
  return x / (1.0 - std::exp(-x));
}

Complex gfun(Complex s) {
  const Complex a = 1.0 - s;
  if (near_nonpositive_integer(a, kPoleEps)) {
    throw PoleError("gfun: pole, 1-s is a non-positive integer");
  }
  if (a.real() > 0.0 && (1.0 + s).real() > 0.0) {
    return std::exp(log_gamma(a) - log_gamma(1.0 + s));
  }
  return gamma(a) / gamma(1.0 + s);
}

std::uint64_t double_factorial(int n) {
  if (n < -1) throw GuardError("double_factorial: n < -1");
  if (n > 33) throw GuardError("double_factorial: uint64 overflow for n > 33");
  std::uint64_t acc = 1;
  for (int k = n; k >= 2; k -= 2) acc *= std::uint64_t(k);
  return acc;
}

ContinuedSqrt sqrt_continued(std::span<const Complex> path_values) {
  if (path_values.empty()) throw GuardError("sqrt_continued: empty path");
  ContinuedSqrt out;
  out.values.reserve(path_values.size());
  for (const Complex& v : path_values) {
    if (std::abs(v) < 1e-300) {
      throw ZeroOnPath("sqrt_continued: path value with modulus < 1e-300");
    }
  }
  double cum = std::arg(path_values[0]);
  out.values.push_back(std::sqrt(std::abs(path_values[0])) *
                       std::exp(Complex(0.0, cum / 2.0)));
  for (std::size_t i = 1; i < path_values.size(); ++i) {
    cum += std::arg(path_values[i] / path_values[i - 1]);
    out.values.push_back(std::sqrt(std::abs(path_values[i])) *
                         std::exp(Complex(0.0, cum / 2.0)));
  }
  // continue one more step to close the loop
  const double cum_close =
      cum + std::arg(path_values[0] / path_values[path_values.size() - 1]);
  const Complex s_close = std::sqrt(std::abs(path_values[0])) *
                          std::exp(Complex(0.0, cum_close / 2.0));
  out.closure_residual = std::abs(s_close - out.values[0]) /
                         std::abs(out.values[0]);
  return out;
}

}  // namespace rmt::specfun
