#include "rmt/bigrat.hpp"

#include <algorithm>
#include <cmath>

namespace rmt::exact {

namespace {
constexpr std::uint64_t kBase = 1ULL << 32;
}

BigInt::BigInt(std::int64_t v) {
  negative_ = v < 0;
  std::uint64_t m = negative_ ? -(std::uint64_t)v : (std::uint64_t)v;
  while (m) {
    limbs_.push_back(std::uint32_t(m & 0xffffffffULL));
    m >>= 32;
  }
}

BigInt BigInt::factorial(int n) {
  BigInt acc(1);
  for (int i = 2; i <= n; ++i) acc = acc * BigInt(i);
  return acc;
}

BigInt BigInt::double_factorial(int n) {
  BigInt acc(1);
  for (int i = n; i >= 2; i -= 2) acc = acc * BigInt(i);
  return acc;
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) negative_ = false;
}

BigInt BigInt::negated() const {
  BigInt r = *this;
  if (!r.is_zero()) r.negative_ = !r.negative_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.negative_ = false;
  return r;
}

int BigInt::compare_mag(const BigInt& a, const BigInt& b) {
  if (a.limbs_.size() != b.limbs_.size()) {
    return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  }
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  }
  return 0;
}

BigInt BigInt::add_mag(const BigInt& a, const BigInt& b) {
  BigInt r;
  const std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
  r.limbs_.resize(n, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = carry;
    if (i < a.limbs_.size()) s += a.limbs_[i];
    if (i < b.limbs_.size()) s += b.limbs_[i];
    r.limbs_[i] = std::uint32_t(s & 0xffffffffULL);
    carry = s >> 32;
  }
  if (carry) r.limbs_.push_back(std::uint32_t(carry));
  return r;
}

BigInt BigInt::sub_mag(const BigInt& a, const BigInt& b) {
  BigInt r;
  r.limbs_.resize(a.limbs_.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::int64_t s = std::int64_t(a.limbs_[i]) - borrow -
                     (i < b.limbs_.size() ? std::int64_t(b.limbs_[i]) : 0);
    if (s < 0) {
      s += std::int64_t(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.limbs_[i] = std::uint32_t(s);
  }
  r.trim();
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  if (negative_ == o.negative_) {
    BigInt r = add_mag(*this, o);
    r.negative_ = negative_;
    r.trim();
    return r;
  }
  const int c = compare_mag(*this, o);
  if (c == 0) return BigInt();
  BigInt r = c > 0 ? sub_mag(*this, o) : sub_mag(o, *this);
  r.negative_ = c > 0 ? negative_ : o.negative_;
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + o.negated(); }

BigInt BigInt::operator*(const BigInt& o) const {
  if (is_zero() || o.is_zero()) return BigInt();
  BigInt r;
  r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    const std::uint64_t ai = limbs_[i];
    for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
      std::uint64_t cur = r.limbs_[i + j] + ai * o.limbs_[j] + carry;
      r.limbs_[i + j] = std::uint32_t(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    std::size_t k = i + o.limbs_.size();
    while (carry) {
      std::uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = std::uint32_t(cur & 0xffffffffULL);
      carry = cur >> 32;
      ++k;
    }
  }
  r.negative_ = negative_ != o.negative_;
  r.trim();
  return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.is_zero()) throw GuardError("BigInt: division by zero");
  const int cmp = compare_mag(a, b);
  if (cmp < 0) {
    q = BigInt();
    r = a;
    return;
  }
  // single-limb divisor fast path
  if (b.limbs_.size() == 1) {
    const std::uint64_t d = b.limbs_[0];
    BigInt quo;
    quo.limbs_.resize(a.limbs_.size());
    std::uint64_t rem = 0;
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
      const std::uint64_t cur = (rem << 32) | a.limbs_[i];
      quo.limbs_[i] = std::uint32_t(cur / d);
      rem = cur % d;
    }
    quo.negative_ = a.negative_ != b.negative_;
    quo.trim();
    q = quo;
    r = BigInt(std::int64_t(rem));
    if (!r.is_zero()) r.negative_ = a.negative_;
    return;
  }
  // Knuth algorithm D
  const int shift = [&] {
    std::uint32_t top = b.limbs_.back();
    int s = 0;
    while (!(top & 0x80000000u)) {
      top <<= 1;
      ++s;
    }
    return s;
  }();
  auto shl = [&](const std::vector<std::uint32_t>& src, int s) {
    std::vector<std::uint32_t> dst(src.size() + 1, 0);
    for (std::size_t i = 0; i < src.size(); ++i) {
      dst[i] |= std::uint32_t((std::uint64_t(src[i]) << s) & 0xffffffffULL);
      dst[i + 1] = std::uint32_t((std::uint64_t(src[i]) << s) >> 32);
    }
    while (!dst.empty() && dst.back() == 0) dst.pop_back();
    return dst;
  };
  std::vector<std::uint32_t> u = shl(a.limbs_, shift);
  std::vector<std::uint32_t> v = shl(b.limbs_, shift);
  const std::size_t n = v.size();
  const std::size_t m = u.size() >= n ? u.size() - n : 0;
  u.resize(u.size() + 1, 0);
  BigInt quo;
  quo.limbs_.assign(m + 1, 0);
  const std::uint64_t vtop = v[n - 1];
  const std::uint64_t vsec = n >= 2 ? v[n - 2] : 0;
  for (std::size_t j = m + 1; j-- > 0;) {
    const std::uint64_t num =
        (std::uint64_t(u[j + n]) << 32) | std::uint64_t(u[j + n - 1]);
    std::uint64_t qhat = num / vtop;
    std::uint64_t rhat = num % vtop;
    if (qhat >= kBase) {
      qhat = kBase - 1;
      rhat = num - qhat * vtop;
    }
    while (rhat < kBase &&
           qhat * vsec > ((rhat << 32) | (n >= 2 ? u[j + n - 2] : 0))) {
      --qhat;
      rhat += vtop;
    }
    // multiply-subtract
    std::int64_t borrow = 0;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t p = qhat * v[i] + carry;
      carry = p >> 32;
      std::int64_t t = std::int64_t(u[i + j]) - std::int64_t(p & 0xffffffffULL) -
                       borrow;
      if (t < 0) {
        t += std::int64_t(kBase);
        borrow = 1;
      } else {
        borrow = 0;
      }
      u[i + j] = std::uint32_t(t);
    }
    std::int64_t t = std::int64_t(u[j + n]) - std::int64_t(carry) - borrow;
    if (t < 0) {
      // qhat was one too large; add back
      t += std::int64_t(kBase);
      --qhat;
      std::uint64_t c2 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t s = std::uint64_t(u[i + j]) + v[i] + c2;
        u[i + j] = std::uint32_t(s & 0xffffffffULL);
        c2 = s >> 32;
      }
      t += std::int64_t(c2);
      t &= std::int64_t(kBase - 1);
    }
    u[j + n] = std::uint32_t(t);
    quo.limbs_[j] = std::uint32_t(qhat);
  }
  // remainder = u >> shift, first n limbs
  u.resize(n);
  BigInt rem;
  rem.limbs_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t lo = std::uint64_t(u[i]) >> shift;
    std::uint64_t hi = (i + 1 < n) ? (std::uint64_t(u[i + 1]) << (32 - shift))
                                   : 0;
    if (shift == 0) hi = 0;
    rem.limbs_[i] = std::uint32_t((lo | hi) & 0xffffffffULL);
  }
  rem.trim();
  quo.negative_ = a.negative_ != b.negative_;
  quo.trim();
  if (!rem.is_zero()) rem.negative_ = a.negative_;
  q = quo;
  r = rem;
}

BigInt BigInt::operator/(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  return r;
}

BigInt BigInt::divexact(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  if (!r.is_zero()) throw GuardError("BigInt::divexact: remainder not zero");
  return q;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a.negative_ = false;
  b.negative_ = false;
  while (!b.is_zero()) {
    BigInt q, r;
    divmod(a, b, q, r);
    a = b;
    b = r;
    b.negative_ = false;
  }
  return a;
}

bool BigInt::operator==(const BigInt& o) const {
  return negative_ == o.negative_ && limbs_ == o.limbs_;
}

bool BigInt::operator<(const BigInt& o) const {
  if (negative_ != o.negative_) return negative_;
  const int c = compare_mag(*this, o);
  return negative_ ? c > 0 : c < 0;
}

double BigInt::to_double() const {
  double v = 0.0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    v = v * 4294967296.0 + double(limbs_[i]);
  }
  return negative_ ? -v : v;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  BigInt t = abs();
  const BigInt billion(1000000000);
  std::string out;
  while (!t.is_zero()) {
    BigInt q, r;
    divmod(t, billion, q, r);
    const std::uint64_t chunk = r.is_zero() ? 0 : r.limbs_[0];
    std::string part = std::to_string(chunk);
    if (!q.is_zero()) part = std::string(9 - part.size(), '0') + part;
    out = part + out;
    t = q;
  }
  return (negative_ ? "-" : "") + out;
}

BigRat::BigRat(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw GuardError("BigRat: zero denominator");
  if (den_.sign() < 0) {
    num_ = num_.negated();
    den_ = den_.negated();
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  const BigInt g = BigInt::gcd(num_, den_);
  num_ = num_.divexact(g);
  den_ = den_.divexact(g);
}

BigRat BigRat::operator+(const BigRat& o) const {
  return BigRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
BigRat BigRat::operator-(const BigRat& o) const {
  return BigRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
BigRat BigRat::operator*(const BigRat& o) const {
  return BigRat(num_ * o.num_, den_ * o.den_);
}
BigRat BigRat::operator/(const BigRat& o) const {
  if (o.is_zero()) throw GuardError("BigRat: division by zero");
  return BigRat(num_ * o.den_, den_ * o.num_);
}
bool BigRat::operator==(const BigRat& o) const {
  return num_ == o.num_ && den_ == o.den_;
}

double BigRat::to_double() const {
  // scale down in tandem to stay in double range for the magnitudes we use
  return num_.to_double() / den_.to_double();
}

std::string BigRat::to_string() const {
  if (den_ == BigInt(1)) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

BigInt determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return BigInt(1);
  BigInt prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot][k].is_zero()) ++pivot;
      if (pivot == n) return BigInt(0);
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divexact(prev);
      }
      m[i][k] = BigInt(0);
    }
    prev = m[k][k];
  }
  BigInt det = m[n - 1][n - 1];
  return sign < 0 ? det.negated() : det;
}

}  // namespace rmt::exact
