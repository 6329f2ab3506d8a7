#include "rmt/contours.hpp"

#include <cmath>
#include <cstdio>

#include "rmt/parallel.hpp"
#include "rmt/specfun.hpp"

namespace rmt::contours {

namespace sf = rmt::specfun;

namespace {

Complex ipow(Complex w, int e) {
  if (e < 0) return 1.0 / ipow(w, -e);
  Complex acc(1.0, 0.0);
  while (e) {
    if (e & 1) acc *= w;
    w *= w;
    e >>= 1;
  }
  return acc;
}

// (2 pi i)^{-k}
Complex two_pi_i_neg_pow(int k) {
  return ipow(Complex(0.0, kTwoPi), -k);
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

struct QuadResult {
  Complex value;
  double abs_sum;  // sum of |f * jacobian|, same h^K scaling as value
};

// generic tensor-product circle quadrature; centers/radii per variable.
QuadResult tensor_circle_quadrature(const Integrand& f,
                                    std::span<const Complex> centers,
                                    std::span<const double> radii,
                                    int points) {
  const int kk = int(centers.size());
  std::vector<Complex> nodes(points);  // e^{i theta_m}
  for (int m = 0; m < points; ++m) {
    const double t = kTwoPi * m / points;
    nodes[m] = Complex(std::cos(t), std::sin(t));
  }
  // parallelize over the outermost index; fixed accumulation order inside,
  // and the outer partials are reduced in index order
  std::vector<Complex> partial(points, Complex(0.0, 0.0));
  std::vector<double> partial_abs(points, 0.0);
  parallel_chunks(std::size_t(points), [&](std::size_t m0) {
    std::vector<Complex> w(kk);
    std::vector<Complex> dw(kk);  // i * R * e^{i theta}
    std::vector<int> idx(kk, 0);
    idx[0] = int(m0);
    w[0] = centers[0] + radii[0] * nodes[m0];
    dw[0] = Complex(0.0, 1.0) * radii[0] * nodes[m0];
    Complex acc(0.0, 0.0);
    double acc_abs = 0.0;
    if (kk == 1) {
      acc = f(w) * dw[0];
      acc_abs = std::abs(acc);
    } else {
      // odometer over the remaining kk-1 indices
      for (int i = 1; i < kk; ++i) {
        idx[i] = 0;
        w[i] = centers[i] + radii[i] * nodes[0];
        dw[i] = Complex(0.0, 1.0) * radii[i] * nodes[0];
      }
      for (;;) {
        Complex jac = dw[0];
        for (int i = 1; i < kk; ++i) jac *= dw[i];
        const Complex term = f(w) * jac;
        acc += term;
        acc_abs += std::abs(term);
        int pos = kk - 1;
        for (;;) {
          ++idx[pos];
          if (idx[pos] < points) {
            w[pos] = centers[pos] + radii[pos] * nodes[idx[pos]];
            dw[pos] = Complex(0.0, 1.0) * radii[pos] * nodes[idx[pos]];
            break;
          }
          idx[pos] = 0;
          w[pos] = centers[pos] + radii[pos] * nodes[0];
          dw[pos] = Complex(0.0, 1.0) * radii[pos] * nodes[0];
          --pos;
          if (pos == 0) break;
        }
        if (pos == 0) break;
      }
    }
    partial[m0] = acc;
    partial_abs[m0] = acc_abs;
  });
  Complex total(0.0, 0.0);
  double total_abs = 0.0;
  for (const Complex& p : partial) total += p;
  for (double a : partial_abs) total_abs += a;
  const double h = std::pow(kTwoPi / points, kk);
  return {total * h, total_abs * h};
}

Complex quadrature_with_doubling(const Integrand& f,
                                 std::span<const Complex> centers,
                                 std::span<const double> radii, int points,
                                 double tol) {
  const QuadResult coarse = tensor_circle_quadrature(f, centers, radii, points);
  const QuadResult fine =
      tensor_circle_quadrature(f, centers, radii, 2 * points);
  const double scale =
      std::max({std::abs(fine.value), std::abs(coarse.value), 1e-30});
  // the cancellation in the trapezoid sums sets a roundoff floor below
  // which the doubling comparison only measures noise
  const double noise_floor = 64.0 * 2.220446049250313e-16 * fine.abs_sum;
  if (std::abs(fine.value - coarse.value) > std::max(tol * scale, noise_floor)) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "circle quadrature did not converge under point doubling: "
                  "|delta|/scale = %.3e at %d points",
                  std::abs(fine.value - coarse.value) / scale, points);
    throw NonConvergence(msg);
  }
  return fine.value;
}

}  // namespace

NestedContourSpec default_ratios_spec(int k, Complex alpha, int n) {
  NestedContourSpec spec;
  const double a = std::abs(alpha);
  // hug the poles at larger N*K: each extra e^{N R} factor costs digits to
  // cancellation, so the margin shrinks like 1/(n k)
  const double step = std::min(
      0.12, std::max(0.015, 1.5 / (std::max(n, 1) * std::max(k, 1))));
  const double base = a * 1.02 + 0.25 * step;
  spec.radii.resize(k);
  for (int i = 0; i < k; ++i) {
    spec.radii[i] = base + step * (k - 1 - i);  // radii[0] outermost
  }
  // points: geometric decay is set by the gap between the innermost circle
  // and the enclosed poles, plus headroom for the e^{N w} Fourier content
  const double r_min = spec.radii[k - 1];
  const double r_max = spec.radii[0];
  const double rate = std::log(r_min / std::max(a, 0.25 * step));
  int pts = 64;
  const double need =
      std::max(30.0 / std::max(rate, 1e-3), 1.5 * n * r_max + 96.0);
  while (pts < need) pts *= 2;
  spec.points_per_circle = std::min(pts, 8192);
  return spec;
}

Complex ratios_integrand_so(std::span<const Complex> w, int n, int k,
                            Complex alpha, Complex gamma) {
  const Complex c = std::exp(-double(n) * alpha) *
                    ((k * (k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) *
                    std::pow(2.0, k) * sf::zfun(2.0 * gamma) *
                    two_pi_i_neg_pow(k) / factorial(k);
  Complex val = c;
  for (int j = 0; j < k; ++j) {
    for (int l = j + 1; l < k; ++l) {
      val *= sf::xzfun(w[j] + w[l]) * (w[l] - w[j]) *
             (w[l] * w[l] - w[j] * w[j]);
    }
  }
  for (int j = 0; j < k; ++j) {
    const Complex denom = (w[j] - alpha) * (w[j] + alpha);
    if (std::abs(denom) < 1e-14) {
      throw PoleError("ratios_integrand_so: w on a pole at +-alpha");
    }
    // 1/z(w + gamma) = 1 - e^{-(w+gamma)}, entire
    val *= std::exp(double(n) * w[j]) * ipow(w[j], 3 - 2 * k) *
           (1.0 - std::exp(-(w[j] + gamma))) / denom;
  }
  return val;
}

Complex nested_contour_integral(const Integrand& f,
                                const NestedContourSpec& spec, double tol) {
  const int kk = int(spec.radii.size());
  if (kk == 0) throw GuardError("nested_contour_integral: no radii");
  for (int i = 1; i < kk; ++i) {
    if (spec.radii[i] >= spec.radii[i - 1]) {
      throw GuardError("nested_contour_integral: radii must decrease");
    }
  }
  std::vector<Complex> centers(kk, spec.center);
  return quadrature_with_doubling(f, centers, spec.radii,
                                  spec.points_per_circle, tol);
}

Complex product_circle_integral(const Integrand& f,
                                std::span<const Complex> centers,
                                double radius, int points) {
  std::vector<double> radii(centers.size(), radius);
  return quadrature_with_doubling(f, centers, radii, points, 1e-9);
}

Complex ratios_contour_so(int n, int k, Complex alpha, Complex gamma,
                          const NestedContourSpec* spec) {
  if (k < 1 || k > 3) {
    throw GuardError("ratios_contour_so: K capped at 3 (cost is points^K)");
  }
  NestedContourSpec local;
  if (!spec) {
    local = default_ratios_spec(k, alpha, n);
    spec = &local;
  }
  auto f = [n, k, alpha, gamma](std::span<const Complex> w) {
    return ratios_integrand_so(w, n, k, alpha, gamma);
  };
  return nested_contour_integral(f, *spec, 1e-9);
}

std::string PoleAssignment::to_string() const {
  std::string s;
  for (int e : eps) {
    if (!s.empty()) s += ',';
    s += (e == 0 ? "0" : (e > 0 ? "+a" : "-a"));
  }
  return s;
}

int PoleAssignment::nonzero_count() const {
  int c = 0;
  for (int e : eps) c += (e != 0);
  return c;
}

std::map<PoleAssignment, Complex> residue_decomposition_so(
    int n, int k, Complex alpha, Complex gamma, double circle_radius,
    int points) {
  if (k < 1 || k > 3) {
    throw GuardError("residue_decomposition_so: K capped at 3");
  }
  const double a = std::abs(alpha);
  if (circle_radius <= 0.0) circle_radius = 0.4 * a;
  if (circle_radius >= 0.5 * a) {
    throw GuardError("residue_decomposition_so: circle_radius must be < |alpha|/2");
  }
  auto f = [n, k, alpha, gamma](std::span<const Complex> w) {
    return ratios_integrand_so(w, n, k, alpha, gamma);
  };
  std::map<PoleAssignment, Complex> out;
  std::vector<int> eps(k, -1);
  for (;;) {
    PoleAssignment pa;
    pa.eps = eps;
    std::vector<Complex> centers(k);
    for (int i = 0; i < k; ++i) centers[i] = double(eps[i]) * alpha;
    out[pa] = product_circle_integral(f, centers, circle_radius, points);
    int pos = k - 1;
    while (pos >= 0) {
      if (eps[pos] < 1) {
        ++eps[pos];
        break;
      }
      eps[pos] = -1;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

namespace {

// integrand shared by M and J: prod_{j<l} (w_l - w_j)(w_l^2 - w_j^2)
// * exp(sum w) * prod w^{3-2K}; with_sum multiplies by sum_m w_m.
Complex mj_integrand(std::span<const Complex> w, int k, bool with_sum) {
  const int vars = k - 1;
  Complex val(1.0, 0.0);
  Complex sum(0.0, 0.0);
  for (int j = 0; j < vars; ++j) {
    sum += w[j];
    for (int l = j + 1; l < vars; ++l) {
      val *= (w[l] - w[j]) * (w[l] * w[l] - w[j] * w[j]);
    }
  }
  val *= std::exp(sum);
  for (int j = 0; j < vars; ++j) val *= ipow(w[j], 3 - 2 * k);
  if (with_sum) val *= sum;
  return val;
}

}  // namespace

Complex m_integral(int k, int points) {
  if (k < 2 || k > 6) throw GuardError("m_integral: need 2 <= k <= 6");
  std::vector<Complex> centers(k - 1, Complex(0.0, 0.0));
  std::vector<double> radii(k - 1, 0.5);
  auto f = [k](std::span<const Complex> w) { return mj_integrand(w, k, false); };
  return quadrature_with_doubling(f, centers, radii, points, 1e-9);
}

Complex j_integral(int k, int points) {
  if (k < 2 || k > 6) throw GuardError("j_integral: need 2 <= k <= 6");
  std::vector<Complex> centers(k - 1, Complex(0.0, 0.0));
  std::vector<double> radii(k - 1, 0.5);
  auto f = [k](std::span<const Complex> w) { return mj_integrand(w, k, true); };
  return quadrature_with_doubling(f, centers, radii, points, 1e-9);
}

Complex moment_contour_so(int n, int k) {
  if (k < 1 || k > 4) throw GuardError("moment_contour_so: need 1 <= k <= 4");
  if (k == 1) return Complex(1.0, 0.0);  // empty moment
  const int vars = k - 1;
  const Complex pref = ((k - 1) * (k - 2) / 2 % 2 == 0 ? 1.0 : -1.0) *
                       std::pow(2.0, k - 1) * two_pi_i_neg_pow(vars) /
                       factorial(k - 1);
  auto f = [n, k](std::span<const Complex> w) {
    const int vars = k - 1;
    Complex val(1.0, 0.0);
    Complex sum(0.0, 0.0);
    for (int j = 0; j < vars; ++j) {
      sum += w[j];
      for (int l = j + 1; l < vars; ++l) {
        val *= sf::xzfun(w[j] + w[l]) * (w[l] - w[j]) *
               (w[l] * w[l] - w[j] * w[j]);
      }
    }
    val *= std::exp(double(n) * sum);
    for (int j = 0; j < vars; ++j) val *= ipow(w[j], 3 - 2 * k);
    return val;
  };
  std::vector<Complex> centers(vars, Complex(0.0, 0.0));
  const double radius = std::min(0.8, 8.0 / (n + 1.0) + 0.05);
  std::vector<double> radii(vars, radius);
  int pts = 64;
  while (pts < 4.0 * n * radius + 48.0) pts *= 2;
  return pref * quadrature_with_doubling(f, centers, radii, pts, 1e-9);
}

}  // namespace rmt::contours
