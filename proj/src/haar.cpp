#include "rmt/haar.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "rmt/rng.hpp"

namespace rmt::haar {

namespace {

constexpr double kPairTol = 1e-8;
constexpr double kClampTol = 1e-8;

// Eigen's tridiagonal QL occasionally exceeds its iteration cap on these
// matrices (observed on ~1e-5 of Haar samples); a reversed-permutation
// similarity or a tiny diagonal shift gives the same spectrum through a
// different iteration path.
template <class Matrix>
Eigen::VectorXd robust_sym_eigenvalues(const Matrix& m) {
  using Solver = Eigen::SelfAdjointEigenSolver<Matrix>;
  Solver es(m, Eigen::EigenvaluesOnly);
  if (es.info() == Eigen::Success) return es.eigenvalues();
  const Matrix rev = m.reverse();
  Solver es2(rev, Eigen::EigenvaluesOnly);
  if (es2.info() == Eigen::Success) return es2.eigenvalues();
  Matrix shifted = m;
  const double shift = 1e-12;
  shifted.diagonal().array() += shift;
  Solver es3(shifted, Eigen::EigenvaluesOnly);
  if (es3.info() == Eigen::Success) {
    return es3.eigenvalues().array() - shift;
  }
  throw NonConvergence("symmetric eigensolver did not converge");
}

// angles from the 2n eigenvalues {cos theta_j, each twice} of the symmetric
// (or Hermitian) part of the matrix; the matrix itself is orthogonal or
// unitary, so this recovers |arg| of each conjugate eigenvalue pair.
std::vector<double> angles_from_cosines(const Eigen::VectorXd& ev, int n) {
  std::vector<double> c(ev.data(), ev.data() + ev.size());
  std::sort(c.begin(), c.end());
  std::vector<double> angles;
  angles.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double a = c[2 * i], b = c[2 * i + 1];
    if (std::abs(a - b) > kPairTol) {
      throw EigenPairingError(
          "eigenvalues do not pair into conjugates: gap = " +
          std::to_string(std::abs(a - b)));
    }
    double v = 0.5 * (a + b);
    v = std::min(1.0, std::max(-1.0, v));
    double theta = std::acos(v);
    // clamp away from 0, keep pi (interval is (0, pi])
    if (theta < kClampTol) theta = kClampTol;
    angles.push_back(theta);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

SpectrumSample qr_sample_so(int n, std::uint64_t seed, std::uint64_t index) {
  const int m = 2 * n;
  Rng rng(seed, index);
  Eigen::MatrixXd g(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) g(i, j) = rng.normal();

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  // normalize by the signs of the R diagonal so Q is Haar on O(2n)
  for (int j = 0; j < m; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  // push Haar measure from the det = -1 component onto SO(2n)
  if (q.partialPivLu().determinant() < 0.0) q.col(m - 1) = -q.col(m - 1);

  Eigen::MatrixXd sym = 0.5 * (q + q.transpose());
  SpectrumSample s;
  s.n = n;
  s.angles = angles_from_cosines(robust_sym_eigenvalues(sym), n);
  return s;
}

// Quaternions as pairs (a, b) of complex numbers, q = a + b j.
struct Quat {
  Complex a, b;
};

Quat qmul(const Quat& x, const Quat& y) {
  return {x.a * y.a - x.b * std::conj(y.b), x.a * y.b + x.b * std::conj(y.a)};
}
Quat qconj(const Quat& q) { return {std::conj(q.a), -q.b}; }
double qnorm2(const Quat& q) { return std::norm(q.a) + std::norm(q.b); }
Quat qscale(const Quat& q, double s) { return {q.a * s, q.b * s}; }
Quat qsub(const Quat& x, const Quat& y) { return {x.a - y.a, x.b - y.b}; }

// Householder QR over the quaternion algebra; returns Q with R's diagonal
// normalized to positive reals, which makes Q Haar on Sp(n) = USp(2n).
void quaternion_haar(int n, Rng& rng, std::vector<Quat>& q_out) {
  auto idx = [n](int i, int j) { return i * n + j; };
  std::vector<Quat> a(n * n);
  for (auto& q : a) {
    q.a = Complex(rng.normal(), rng.normal());
    q.b = Complex(rng.normal(), rng.normal());
  }
  // accumulate Q = H_1 H_2 ... applied to the identity
  std::vector<Quat> q(n * n, Quat{Complex(0, 0), Complex(0, 0)});
  for (int i = 0; i < n; ++i) q[idx(i, i)].a = Complex(1, 0);

  std::vector<Quat> u(n);
  for (int k = 0; k < n; ++k) {
    // column k of the working matrix, rows k..n-1
    double norm2 = 0.0;
    for (int i = k; i < n; ++i) norm2 += qnorm2(a[idx(i, k)]);
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;
    // sigma = -a_kk/|a_kk| (unit quaternion), u = x - sigma*norm*e_k
    const Quat akk = a[idx(k, k)];
    const double akk_abs = std::sqrt(qnorm2(akk));
    Quat sigma;
    if (akk_abs > 0.0) {
      sigma = qscale(akk, -1.0 / akk_abs);
    } else {
      sigma = Quat{Complex(-1, 0), Complex(0, 0)};
    }
    double unorm2 = 0.0;
    for (int i = k; i < n; ++i) {
      u[i] = a[idx(i, k)];
      if (i == k) u[i] = qsub(u[i], qscale(sigma, norm));
      unorm2 += qnorm2(u[i]);
    }
    if (unorm2 == 0.0) continue;
    const double inv = 2.0 / unorm2;
    // apply H = I - 2 u u* / |u|^2 on the left of A (columns k..n-1)
    for (int j = k; j < n; ++j) {
      Quat dot{Complex(0, 0), Complex(0, 0)};
      for (int i = k; i < n; ++i) {
        const Quat t = qmul(qconj(u[i]), a[idx(i, j)]);
        dot.a += t.a;
        dot.b += t.b;
      }
      dot = qscale(dot, inv);
      for (int i = k; i < n; ++i) {
        const Quat t = qmul(u[i], dot);
        a[idx(i, j)] = qsub(a[idx(i, j)], t);
      }
    }
    // apply H on the right of Q (Q <- Q H, all rows)
    for (int i = 0; i < n; ++i) {
      Quat dot{Complex(0, 0), Complex(0, 0)};
      for (int l = k; l < n; ++l) {
        const Quat t = qmul(q[idx(i, l)], u[l]);
        dot.a += t.a;
        dot.b += t.b;
      }
      dot = qscale(dot, inv);
      for (int l = k; l < n; ++l) {
        const Quat t = qmul(dot, qconj(u[l]));
        q[idx(i, l)] = qsub(q[idx(i, l)], t);
      }
    }
  }
  // fix phases: R_kk = a[k,k] after reduction; right-multiply Q by
  // diag(R_kk/|R_kk|) so the normalized R has positive real diagonal
  for (int k = 0; k < n; ++k) {
    const Quat rkk = a[idx(k, k)];
    const double m = std::sqrt(qnorm2(rkk));
    if (m == 0.0) continue;
    const Quat d = qscale(rkk, 1.0 / m);
    for (int i = 0; i < n; ++i) q[idx(i, k)] = qmul(q[idx(i, k)], d);
  }
  q_out = std::move(q);
}

SpectrumSample qr_sample_usp(int n, std::uint64_t seed, std::uint64_t index) {
  Rng rng(seed, index);
  std::vector<Quat> q;
  quaternion_haar(n, rng, q);
  // embed into U(2n): quaternion a + b j -> [[a, b], [-conj(b), conj(a)]]
  const int m = 2 * n;
  Eigen::MatrixXcd u(m, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Quat& x = q[i * n + j];
      u(2 * i, 2 * j) = x.a;
      u(2 * i, 2 * j + 1) = x.b;
      u(2 * i + 1, 2 * j) = -std::conj(x.b);
      u(2 * i + 1, 2 * j + 1) = std::conj(x.a);
    }
  }
  Eigen::MatrixXcd herm = 0.5 * (u + u.adjoint());
  SpectrumSample s;
  s.n = n;
  s.angles = angles_from_cosines(robust_sym_eigenvalues(herm), n);
  return s;
}

// ----------------------------------------------------------------------
// Metropolis sampling of the eigenangle JPDF (cross-check path)

double log_jpdf(std::span<const double> angles, bool symplectic) {
  const std::size_t n = angles.size();
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double d = std::cos(angles[k]) - std::cos(angles[j]);
      if (d == 0.0) return -std::numeric_limits<double>::infinity();
      s += 2.0 * std::log(std::abs(d));
    }
    if (symplectic) s += 2.0 * std::log(std::sin(angles[j]));
  }
  return s;
}

class McmcStream final : public SampleStream {
 public:
  McmcStream(EnsembleKind ensemble, int n, const SamplerConfig& cfg,
             std::uint64_t start_index)
      : ensemble_(ensemble), n_(n), cfg_(cfg) {
    chain_ = start_index / kMcmcChainLen;
    offset_ = start_index % kMcmcChainLen;
    restart();
  }

  SpectrumSample next() override {
    if (offset_ >= kMcmcChainLen) {
      ++chain_;
      offset_ = 0;
      restart();
    }
    for (int s = 0; s < cfg_.mcmc_thin; ++s) sweep();
    ++offset_;
    SpectrumSample out;
    out.n = n_;
    out.angles = state_;
    std::sort(out.angles.begin(), out.angles.end());
    return out;
  }

 private:
  void restart() {
    rng_ = std::make_unique<Rng>(cfg_.seed ^ 0x5c5c5c5c5c5c5c5cULL, chain_);
    state_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      state_[i] = kPi * (i + 0.5) / n_;  // spread start
    }
    logp_ = log_jpdf(state_, ensemble_ == EnsembleKind::UnitarySymplectic);
    for (int s = 0; s < cfg_.mcmc_burn_in; ++s) sweep();
    // advance to the requested offset within the chain
    for (std::uint64_t i = 0; i < offset_; ++i) {
      for (int s = 0; s < cfg_.mcmc_thin; ++s) sweep();
    }
  }

  void sweep() {
    const double step = 0.5 / n_;
    prop_ = state_;
    for (int i = 0; i < n_; ++i) {
      prop_[i] = state_[i] + step * rng_->normal();
      if (prop_[i] <= 0.0 || prop_[i] >= kPi) {
        prop_ = state_;
        return;  // reject proposals leaving (0, pi)
      }
    }
    const double lp =
        log_jpdf(prop_, ensemble_ == EnsembleKind::UnitarySymplectic);
    if (std::log(rng_->uniform_pos()) < lp - logp_) {
      state_ = prop_;
      logp_ = lp;
    }
  }

  EnsembleKind ensemble_;
  int n_;
  SamplerConfig cfg_;
  std::uint64_t chain_ = 0, offset_ = 0;
  std::unique_ptr<Rng> rng_;
  std::vector<double> state_, prop_;
  double logp_ = 0.0;
};

class QrStream final : public SampleStream {
 public:
  QrStream(EnsembleKind ensemble, int n, const SamplerConfig& cfg,
           std::uint64_t start_index)
      : ensemble_(ensemble), n_(n), cfg_(cfg), index_(start_index) {}

  SpectrumSample next() override {
    const std::uint64_t i = index_++;
    return ensemble_ == EnsembleKind::SpecialOrthogonalEven
               ? qr_sample_so(n_, cfg_.seed, i)
               : qr_sample_usp(n_, cfg_.seed, i);
  }

 private:
  EnsembleKind ensemble_;
  int n_;
  SamplerConfig cfg_;
  std::uint64_t index_;
};

}  // namespace

SpectrumSample sample_so2n(int n, const SamplerConfig& cfg,
                           std::uint64_t index) {
  if (n < 1) throw GuardError("sample_so2n: n must be >= 1");
  if (cfg.method == SampleMethod::MatrixQR) {
    return qr_sample_so(n, cfg.seed, index);
  }
  McmcStream s(EnsembleKind::SpecialOrthogonalEven, n, cfg, index);
  return s.next();
}

SpectrumSample sample_usp2n(int n, const SamplerConfig& cfg,
                            std::uint64_t index) {
  if (n < 1) throw GuardError("sample_usp2n: n must be >= 1");
  if (cfg.method == SampleMethod::MatrixQR) {
    return qr_sample_usp(n, cfg.seed, index);
  }
  McmcStream s(EnsembleKind::UnitarySymplectic, n, cfg, index);
  return s.next();
}

double jpdf_density_so(std::span<const double> angles) {
  double p = 1.0;
  for (std::size_t j = 0; j < angles.size(); ++j) {
    for (std::size_t k = j + 1; k < angles.size(); ++k) {
      const double d = std::cos(angles[k]) - std::cos(angles[j]);
      p *= d * d;
    }
  }
  return p;
}

double log_jpdf_so(std::span<const double> angles) {
  return log_jpdf(angles, false);
}

double log_jpdf_usp(std::span<const double> angles) {
  return log_jpdf(angles, true);
}

std::unique_ptr<SampleStream> make_stream(EnsembleKind ensemble, int n,
                                          const SamplerConfig& cfg,
                                          std::uint64_t start_index) {
  if (cfg.method == SampleMethod::MatrixQR) {
    return std::make_unique<QrStream>(ensemble, n, cfg, start_index);
  }
  return std::make_unique<McmcStream>(ensemble, n, cfg, start_index);
}

}  // namespace rmt::haar
