#include "rmt/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rmt/moments.hpp"
#include "rmt/parallel.hpp"
#include "rmt/specfun.hpp"

namespace rmt::arith {

namespace sf = rmt::specfun;

CurveConfig CurveConfig::e11() {
  CurveConfig c;
  c.weierstrass = {0, -1, 1, 0, 0};
  c.conductor = 11;
  c.omega = +1;
  c.kappa = 0.0;
  c.bad_prime_ap = {{11, 1}};
  return c;
}

namespace {

std::int64_t imod(std::int64_t a, std::int64_t p) {
  const std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::vector<std::int64_t> sieve_primes(std::int64_t n) {
  std::vector<bool> comp(std::size_t(n + 1), false);
  std::vector<std::int64_t> primes;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return primes;
}

}  // namespace

std::int64_t count_points_mod_p(const CurveConfig& curve, std::int64_t p) {
  if (p < 2 || p > 1000000) {
    throw GuardError("count_points_mod_p: p out of range");
  }
  const auto [a1, a2, a3, a4, a6] = std::array{
      curve.weierstrass[0], curve.weierstrass[1], curve.weierstrass[2],
      curve.weierstrass[3], curve.weierstrass[4]};
  if (p < 5) {
    std::int64_t count = 1;  // point at infinity
    for (std::int64_t x = 0; x < p; ++x) {
      for (std::int64_t y = 0; y < p; ++y) {
        const std::int64_t lhs = imod(y * y + a1 * x * y + a3 * y, p);
        const std::int64_t rhs =
            imod(x * x * x + a2 * x * x + a4 * x + a6, p);
        if (lhs == rhs) ++count;
      }
    }
    return count;
  }
  // complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  const std::int64_t b2 = imod(a1 * a1 + 4 * a2, p);
  const std::int64_t b4 = imod(2 * a4 + a1 * a3, p);
  const std::int64_t b6 = imod(a3 * a3 + 4 * a6, p);
  std::vector<bool> is_square(std::size_t(p), false);
  for (std::int64_t x = 0; x < p; ++x) is_square[std::size_t(x * x % p)] = true;
  std::int64_t count = 1;
  for (std::int64_t x = 0; x < p; ++x) {
    // f = 4x^3 + b2 x^2 + 2 b4 x + b6 mod p, Horner with reduced products
    std::int64_t f = 4;
    f = (f * x + b2) % p;
    f = (f * x + 2 * b4) % p;
    f = (f * x + b6) % p;
    if (f == 0) {
      count += 1;
    } else if (is_square[std::size_t(f)]) {
      count += 2;
    }
  }
  return count;
}

ApTable build_ap_table(const CurveConfig& curve, std::int64_t p_max) {
  if (p_max < 2) throw GuardError("build_ap_table: p_max too small");
  const std::vector<std::int64_t> primes = sieve_primes(p_max);
  std::vector<double> lam(primes.size(), 0.0);
  parallel_chunks(primes.size(), [&](std::size_t i) {
    const std::int64_t p = primes[i];
    const auto bad = curve.bad_prime_ap.find(p);
    std::int64_t ap;
    if (bad != curve.bad_prime_ap.end()) {
      ap = bad->second;
    } else {
      ap = p + 1 - count_points_mod_p(curve, p);
    }
    lam[i] = double(ap) / std::sqrt(double(p));
  });
  ApTable t;
  t.p_max = p_max;
  for (std::size_t i = 0; i < primes.size(); ++i) t.lambda[primes[i]] = lam[i];
  return t;
}

void save_ap_table(const ApTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GuardError("save_ap_table: cannot open " + path);
  out << "p,lambda\n";
  char buf[64];
  for (const auto& [p, l] : table.lambda) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n", (long long)p, l);
    out << buf;
  }
}

ApTable load_ap_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GuardError("load_ap_table: cannot open " + path);
  ApTable t;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.rfind("p,", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("load_ap_table: missing comma", line_no);
    }
    t.lambda[std::stoll(line.substr(0, comma))] =
        std::stod(line.substr(comma + 1));
  }
  if (!t.lambda.empty()) t.p_max = t.lambda.rbegin()->first;
  return t;
}

ApTable ap_table_cached(const CurveConfig& curve, std::int64_t p_max) {
  const char* dir = std::getenv("RMT_CACHE_DIR");
  if (!dir) return build_ap_table(curve, p_max);
  std::ostringstream name;
  name << dir << "/lambda";
  for (auto a : curve.weierstrass) name << "_" << a;
  name << "_M" << curve.conductor << "_P" << p_max << ".csv";
  const std::string path = name.str();
  if (std::ifstream(path).good()) return load_ap_table(path);
  ApTable t = build_ap_table(curve, p_max);
  save_ap_table(t, path);
  return t;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  int k = 1;
  if (v % 2 == 1) {
    const int am8 = int(imod(a, 8));
    if (am8 == 3 || am8 == 5) k = -1;
  }
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  // n odd and positive from here on
  a = imod(a, n);
  while (a != 0) {
    v = 0;
    while (a % 2 == 0) {
      a /= 2;
      ++v;
    }
    if (v % 2 == 1) {
      const int nm8 = int(n % 8);
      if (nm8 == 3 || nm8 == 5) k = -k;
    }
    if (a % 4 == 3 && n % 4 == 3) k = -k;
    const std::int64_t t = a;
    a = n % t;
    n = t;
  }
  return n == 1 ? k : 0;
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 1) return true;
  auto squarefree = [](std::int64_t m) {
    for (std::int64_t q = 2; q * q <= m; ++q) {
      if (m % (q * q) == 0) return false;
    }
    return true;
  };
  if (d <= 0) return false;
  if (imod(d, 4) == 1) return squarefree(d);
  if (d % 4 == 0) {
    const std::int64_t m = d / 4;
    const std::int64_t m4 = imod(m, 4);
    return (m4 == 2 || m4 == 3) && squarefree(m);
  }
  return false;
}

namespace {

double log_conductor_of(std::int64_t d, const CurveConfig& curve) {
  return std::log(std::sqrt(double(curve.conductor)) * double(d) / kTwoPi);
}

}  // namespace

TwistFamily twist_family(double X, const CurveConfig& curve) {
  if (X < 3.0) throw GuardError("twist_family: X must be >= 3");
  TwistFamily f;
  f.X = X;
  for (std::int64_t d = 2; d <= std::int64_t(X); ++d) {
    if (!is_fundamental_discriminant(d)) continue;
    if (std::gcd(d, curve.conductor) != 1) continue;
    if (curve.omega * kronecker(d, -curve.conductor) != 1) continue;
    const double nd = log_conductor_of(d, curve);
    if (nd <= 0.0) continue;  // d below 2 pi / sqrt(M)
    f.d.push_back(d);
    f.log_conductor.push_back(nd);
  }
  return f;
}

TwistFamily family_from_dlist(std::span<const std::int64_t> ds,
                              const CurveConfig& curve) {
  TwistFamily f;
  f.X = ds.empty() ? 0.0 : double(*std::max_element(ds.begin(), ds.end()));
  for (std::int64_t d : ds) {
    if (d <= 0) throw GuardError("family_from_dlist: d must be positive");
    const double nd = log_conductor_of(d, curve);
    if (nd <= 0.0) continue;
    f.d.push_back(d);
    f.log_conductor.push_back(nd);
  }
  return f;
}

namespace {

// p^{-s} for complex s
Complex p_pow(double p, Complex s) { return std::exp(-s * std::log(p)); }

Complex cpow(Complex base, Complex e) {
  return std::exp(e * std::log(base));
}

// local Euler factor of A~_E(alpha, gamma) at p with K = r+1
Complex local_factor(double p, double lambda, Complex alpha, Complex gamma,
                     Complex r, bool bad) {
  const Complex pa = p_pow(p, 1.0 + alpha);
  const Complex pg = p_pow(p, 1.0 + gamma);
  const Complex pg2 = p_pow(p, 1.0 + 2.0 * gamma);
  const Complex pag = p_pow(p, 1.0 + alpha + gamma);
  const double p1 = 1.0 / p;
  // zeta-compensating part
  Complex f = cpow(1.0 - pa, r) * cpow(1.0 - p1, 0.5 * r * (r - 1.0)) *
              (1.0 - pg2) / ((1.0 - pag) * cpow(1.0 - pg, r));
  const Complex qa = p_pow(p, 0.5 + alpha);  // p^{-1/2-alpha}
  const Complex qg = p_pow(p, 0.5 + gamma);
  const double q0 = 1.0 / std::sqrt(p);
  if (bad) {
    f *= (1.0 - lambda * qg) /
         ((1.0 - lambda * qa) * cpow(1.0 - lambda * q0, r));
    return f;
  }
  const Complex pa2 = p_pow(p, 1.0 + 2.0 * alpha);
  const Complex half_m = (1.0 - lambda * qg + pg2) /
                         ((1.0 - lambda * qa + pa2) *
                          cpow(1.0 - lambda * q0 + p1, r));
  const Complex half_p = (1.0 + lambda * qg + pg2) /
                         ((1.0 + lambda * qa + pa2) *
                          cpow(1.0 + lambda * q0 + p1, r));
  f *= (0.5 * half_m + 0.5 * half_p + p1) / (1.0 + p1);
  return f;
}

Complex a_e_tilde_complex_r(Complex alpha, Complex gamma, Complex r,
                            const CurveConfig& curve, const ApTable& table) {
  Complex prod(1.0, 0.0);
  for (const auto& [p, lambda] : table.lambda) {
    const bool bad = curve.bad_prime_ap.count(p) > 0;
    prod *= local_factor(double(p), lambda, alpha, gamma, r, bad);
  }
  return prod;
}

}  // namespace

Complex a_e_tilde(Complex alpha, Complex gamma, double r,
                  const CurveConfig& curve, const ApTable& table) {
  if (table.lambda.empty()) return Complex(1.0, 0.0);
  // stability guard: compare against the half-length truncation.  The raw
  // product carries a (lambda(p)^2 - 1)/p fluctuation, so the achievable
  // stability is plot-grade, not spectral; see README.
  Complex half(1.0, 0.0), full(1.0, 0.0);
  const std::int64_t p_half = table.p_max / 2;
  for (const auto& [p, lambda] : table.lambda) {
    const bool bad = curve.bad_prime_ap.count(p) > 0;
    const Complex f = local_factor(double(p), lambda, alpha, gamma, r, bad);
    full *= f;
    if (p <= p_half) half *= f;
  }
  const double rel = std::abs(full - half) / std::max(std::abs(full), 1e-30);
  if (rel > 0.05) {
    throw NonConvergence("a_e_tilde: truncation unstable, half-vs-full = " +
                         std::to_string(rel));
  }
  return full;
}

Complex a_e_tilde_deriv(Complex phi, double r, const CurveConfig& curve,
                        const ApTable& table) {
  const double h = 1e-4;
  auto slope = [&](double step) {
    return (a_e_tilde(phi + step, phi, r, curve, table) -
            a_e_tilde(phi - step, phi, r, curve, table)) /
           (2.0 * step);
  };
  const Complex d1 = slope(h);
  const Complex d2 = slope(0.5 * h);
  const Complex rich = (4.0 * d2 - d1) / 3.0;
  if (std::abs(rich - d2) > 1e-5 * std::max(1.0, std::abs(rich))) {
    throw NonConvergence("a_e_tilde_deriv: Richardson estimate unstable");
  }
  return rich;
}

Complex u_e_bracket(double log_conductor, Complex r, Complex phi,
                    const LfunParts& parts) {
  (void)log_conductor;  // carried by parts.x_factor
  const Complex iphi = Complex(0.0, 1.0) * phi;
  const Complex a_plus = parts.arith_plus(phi, r);
  const Complex ratio_pow =
      std::exp(r * (std::log(parts.zeta_at_1_plus(-iphi)) -
                    std::log(parts.zeta_at_1_plus(iphi))));
  return parts.arith_deriv(phi, r) +
         a_plus * r * parts.zeta_logderiv_1_plus(iphi) -
         a_plus * parts.zeta_logderiv_1_plus(2.0 * iphi) -
         parts.zeta_at_1_plus(2.0 * iphi) * ratio_pow *
             parts.arith_minus(phi, r) * parts.x_factor(phi);
}

namespace {

// Stieltjes gamma_1
constexpr double kStieltjes1 = -0.0728158454836767248605863758749013;

Complex zeta_1_plus(Complex x) {
  if (std::abs(x) < 2e-3) {
    return 1.0 / x + kEulerGamma - kStieltjes1 * x;
  }
  return sf::zeta(1.0 + x);
}

Complex zeta_logderiv_1_plus(Complex x) {
  if (std::abs(x) < 2e-3) {
    return -1.0 / x + kEulerGamma -
           (2.0 * kStieltjes1 + kEulerGamma * kEulerGamma) * x;
  }
  return sf::zeta_prime(1.0 + x) / sf::zeta(1.0 + x);
}

}  // namespace

LfunParts production_parts(std::int64_t d, const CurveConfig& curve,
                           const ApTable& table) {
  const double nd = log_conductor_of(d, curve);
  LfunParts parts;
  parts.zeta_at_1_plus = [](Complex x) { return zeta_1_plus(x); };
  parts.zeta_logderiv_1_plus = [](Complex x) {
    return zeta_logderiv_1_plus(x);
  };
  parts.arith_plus = [&curve, &table](Complex phi, Complex r) {
    const Complex iphi = Complex(0.0, 1.0) * phi;
    return a_e_tilde_complex_r(iphi, iphi, r, curve, table);
  };
  parts.arith_minus = [&curve, &table](Complex phi, Complex r) {
    const Complex iphi = Complex(0.0, 1.0) * phi;
    return a_e_tilde_complex_r(-iphi, iphi, r, curve, table);
  };
  parts.arith_deriv = [&curve, &table](Complex phi, Complex r) {
    const Complex iphi = Complex(0.0, 1.0) * phi;
    const double h = 1e-4;
    const Complex d1 = (a_e_tilde_complex_r(iphi + h, iphi, r, curve, table) -
                        a_e_tilde_complex_r(iphi - h, iphi, r, curve, table)) /
                       (2.0 * h);
    const Complex d2 =
        (a_e_tilde_complex_r(iphi + 0.5 * h, iphi, r, curve, table) -
         a_e_tilde_complex_r(iphi - 0.5 * h, iphi, r, curve, table)) /
        h;
    return (4.0 * d2 - d1) / 3.0;
  };
  parts.x_factor = [nd](Complex phi) {
    const Complex iphi = Complex(0.0, 1.0) * phi;
    return std::exp(-2.0 * nd * iphi) * sf::gfun(iphi);
  };
  return parts;
}

Complex predict_mixed_lfun(std::int64_t d, double r, Complex phi,
                           const CurveConfig& curve, const ApTable& table) {
  if (r < 0.0) throw GuardError("predict_mixed_lfun: r must be >= 0");
  const double nd = log_conductor_of(d, curve);
  if (nd <= 0.0) {
    throw GuardError("predict_mixed_lfun: log conductor not positive");
  }
  const LfunParts parts = production_parts(d, curve, table);
  return moments::predict_V_base(nd, r) *
         u_e_bracket(nd, Complex(r, 0.0), phi, parts);
}

namespace {

// -X'/X(1/2 + i phi) = 2 N_d + Psi(1 - i phi) + Psi(1 + i phi)
Complex minus_x_logderiv(double nd, double phi) {
  const Complex iphi(0.0, phi);
  return 2.0 * nd + sf::digamma(1.0 - iphi) + sf::digamma(1.0 + iphi);
}

}  // namespace

DensityCurve r0_density_lfun(const TwistFamily& family,
                             std::span<const double> phi_grid,
                             const CurveConfig& curve, const ApTable& table) {
  DensityCurve out;
  out.phi.assign(phi_grid.begin(), phi_grid.end());
  out.density.assign(phi_grid.size(), 0.0);
  parallel_chunks(phi_grid.size(), [&](std::size_t i) {
    const double phi = phi_grid[i];
    if (std::abs(phi) < 1e-6) {
      throw GuardError("r0_density_lfun: grid must avoid phi = 0 by 1e-6");
    }
    Complex total(0.0, 0.0);
    for (std::size_t j = 0; j < family.d.size(); ++j) {
      const LfunParts parts = production_parts(family.d[j], curve, table);
      total += minus_x_logderiv(family.log_conductor[j], phi) +
               2.0 * u_e_bracket(family.log_conductor[j], Complex(0.0, 0.0),
                                 Complex(phi, 0.0), parts);
    }
    out.density[i] = total.real() / kTwoPi;
  });
  return out;
}

DensityCurve excised_prediction_lfun(const TwistFamily& family,
                                     std::span<const double> phi_grid,
                                     const CurveConfig& curve,
                                     const ApTable& table, int k_max) {
  if (k_max < 0 || k_max > 8) {
    throw GuardError("excised_prediction_lfun: need 0 <= k_max <= 8");
  }
  if (k_max > 0 && curve.kappa <= 0.0) {
    throw GuardError(
        "excised_prediction_lfun: kappa must be supplied for k_max > 0");
  }
  DensityCurve out = r0_density_lfun(family, phi_grid, curve, table);
  if (k_max == 0) return out;
  parallel_chunks(phi_grid.size(), [&](std::size_t i) {
    const double phi = phi_grid[i];
    Complex extra(0.0, 0.0);
    for (std::size_t j = 0; j < family.d.size(); ++j) {
      const double nd = family.log_conductor[j];
      const double xi =
          std::log(curve.kappa / std::sqrt(double(family.d[j])));
      const LfunParts parts = production_parts(family.d[j], curve, table);
      auto bracket = [&](Complex r) {
        return minus_x_logderiv(nd, phi) +
               2.0 * u_e_bracket(nd, r, Complex(phi, 0.0), parts);
      };
      for (int k = 0; k < k_max; ++k) {
        extra += excised::residue_half_integer(nd, xi, bracket, k, 128);
      }
    }
    out.density[i] += extra.real() / kTwoPi;
  });
  return out;
}

ZeroDataset ingest_zero_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("ingest_zero_data: cannot open " + path, 0);
  ZeroDataset data;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("ingest_zero_data: expected `d,gamma`", line_no);
    }
    try {
      data.d.push_back(std::stoll(line.substr(0, comma)));
      data.gamma.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ParseError("ingest_zero_data: malformed number", line_no);
    }
    if (!std::isfinite(data.gamma.back())) {
      throw ParseError("ingest_zero_data: non-finite ordinate", line_no);
    }
  }
  if (data.d.empty()) throw EmptyDataset("ingest_zero_data: no records");
  return data;
}

DensityCurve zero_histogram(const ZeroDataset& data, int bins, double phi_max) {
  if (bins < 10) throw GuardError("zero_histogram: bins must be >= 10");
  if (phi_max <= 0.0) throw GuardError("zero_histogram: phi_max must be > 0");
  const double h = phi_max / bins;
  std::vector<std::int64_t> counts(bins, 0);
  std::int64_t total = 0;
  for (double g : data.gamma) {
    if (g <= 0.0 || g > phi_max) continue;
    int b = int(g / h);
    if (b >= bins) b = bins - 1;
    ++counts[b];
    ++total;
  }
  if (total == 0) throw EmptyDataset("zero_histogram: no ordinates in range");
  DensityCurve out;
  out.phi.resize(bins);
  out.density.resize(bins);
  for (int b = 0; b < bins; ++b) {
    out.phi[b] = (b + 0.5) * h;
    out.density[b] = double(counts[b]) / (double(total) * h);
  }
  excised::normalize_unit_area(out);
  return out;
}

std::vector<std::int64_t> read_dlist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("read_dlist: cannot open " + path, 0);
  std::vector<std::int64_t> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    try {
      out.push_back(std::stoll(line));
    } catch (const std::exception&) {
      throw ParseError("read_dlist: malformed integer", line_no);
    }
  }
  return out;
}

}  // namespace rmt::arith
