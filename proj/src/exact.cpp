#include "hop/exact.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace hop {

namespace {

inline unsigned __int128 uabs128(__int128 v) {
  return v < 0 ? -static_cast<unsigned __int128>(v)
               : static_cast<unsigned __int128>(v);
}

inline int bitlen_u64(uint64_t x) { return x ? 64 - __builtin_clzll(x) : 0; }

inline int bitlen_u128(unsigned __int128 x) {
  uint64_t hi = static_cast<uint64_t>(x >> 64);
  if (hi) return 64 + bitlen_u64(hi);
  return bitlen_u64(static_cast<uint64_t>(x));
}

}  // namespace

ExactScalar ExactScalar::from_int128_slow(__int128 v) {
  auto big = std::make_unique<Big>();
  big->sign = v < 0 ? -1 : 1;
  big->mag = mag_of_u128(uabs128(v));
  return ExactScalar(std::move(big));
}

std::vector<uint64_t> ExactScalar::mag_of_u128(unsigned __int128 m) {
  std::vector<uint64_t> out;
  out.push_back(static_cast<uint64_t>(m));
  uint64_t hi = static_cast<uint64_t>(m >> 64);
  if (hi) out.push_back(hi);
  return out;
}

std::vector<uint64_t> ExactScalar::magnitude() const {
  if (big_) return big_->mag;
  return mag_of_u128(uabs128(v_));
}

void ExactScalar::normalize() {
  if (!big_) return;
  while (!big_->mag.empty() && big_->mag.back() == 0) big_->mag.pop_back();
  if (big_->mag.empty()) {
    big_.reset();
    v_ = 0;
    return;
  }
  if (big_->mag.size() <= 2) {
    unsigned __int128 m = big_->mag[0];
    if (big_->mag.size() == 2)
      m |= static_cast<unsigned __int128>(big_->mag[1]) << 64;
    if (m <= static_cast<unsigned __int128>(kSmallMax)) {
      v_ = static_cast<__int128>(m);
      if (big_->sign < 0) v_ = -v_;
      big_.reset();
    }
  }
}

ExactScalar ExactScalar::make(int sign, std::vector<uint64_t> mag) {
  auto big = std::make_unique<Big>();
  big->sign = sign;
  big->mag = std::move(mag);
  ExactScalar r(std::move(big));
  r.normalize();
  return r;
}

int ExactScalar::cmp_mag(const std::vector<uint64_t>& a,
                         const std::vector<uint64_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<uint64_t> ExactScalar::add_mag(const std::vector<uint64_t>& a,
                                           const std::vector<uint64_t>& b) {
  const auto& big = a.size() >= b.size() ? a : b;
  const auto& small = a.size() >= b.size() ? b : a;
  std::vector<uint64_t> out(big.size() + 1, 0);
  unsigned __int128 carry = 0;
  for (size_t i = 0; i < big.size(); ++i) {
    unsigned __int128 s = carry + big[i];
    if (i < small.size()) s += small[i];
    out[i] = static_cast<uint64_t>(s);
    carry = s >> 64;
  }
  out[big.size()] = static_cast<uint64_t>(carry);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// Requires |a| >= |b|.
std::vector<uint64_t> ExactScalar::sub_mag(const std::vector<uint64_t>& a,
                                           const std::vector<uint64_t>& b) {
  std::vector<uint64_t> out(a.size(), 0);
  unsigned __int128 borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    unsigned __int128 d = static_cast<unsigned __int128>(a[i]) - borrow -
                          (i < b.size() ? b[i] : 0);
    out[i] = static_cast<uint64_t>(d);
    borrow = (d >> 64) ? 1 : 0;  // wrapped
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<uint64_t> ExactScalar::mul_mag(const std::vector<uint64_t>& a,
                                           const std::vector<uint64_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint64_t> out(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    unsigned __int128 carry = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      unsigned __int128 cur = static_cast<unsigned __int128>(a[i]) * b[j] +
                              out[i + j] + carry;
      out[i + j] = static_cast<uint64_t>(cur);
      carry = cur >> 64;
    }
    size_t k = i + b.size();
    while (carry) {
      unsigned __int128 cur = carry + out[k];
      out[k] = static_cast<uint64_t>(cur);
      carry = cur >> 64;
      ++k;
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

namespace {

void shl_mag(std::vector<uint64_t>& a, unsigned bits) {
  if (a.empty() || bits == 0) return;
  unsigned words = bits / 64, rem = bits % 64;
  size_t n = a.size();
  a.resize(n + words + (rem ? 1 : 0), 0);
  if (rem) {
    for (size_t i = n; i-- > 0;) {
      uint64_t hi = a[i] >> (64 - rem);
      a[i + words + 1] |= hi;
      a[i + words] = a[i] << rem;
    }
    for (size_t i = 0; i < words; ++i) a[i] = 0;
  } else {
    for (size_t i = n; i-- > 0;) a[i + words] = a[i];
    for (size_t i = 0; i < words; ++i) a[i] = 0;
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void shr_mag(std::vector<uint64_t>& a, unsigned bits) {
  unsigned words = bits / 64, rem = bits % 64;
  if (words >= a.size()) {
    a.clear();
    return;
  }
  if (words) a.erase(a.begin(), a.begin() + words);
  if (rem) {
    for (size_t i = 0; i < a.size(); ++i) {
      a[i] >>= rem;
      if (i + 1 < a.size()) a[i] |= a[i + 1] << (64 - rem);
    }
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned trailing_zero_bits(const std::vector<uint64_t>& a) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i]) return static_cast<unsigned>(i) * 64 + __builtin_ctzll(a[i]);
  }
  return 0;
}

}  // namespace

// Knuth algorithm D specialized to 64-bit limbs.
void ExactScalar::divmod_mag(const std::vector<uint64_t>& a,
                             const std::vector<uint64_t>& b,
                             std::vector<uint64_t>& q,
                             std::vector<uint64_t>& r) {
  assert(!b.empty());
  if (cmp_mag(a, b) < 0) {
    q.clear();
    r = a;
    return;
  }
  if (b.size() == 1) {
    uint64_t d = b[0];
    q.assign(a.size(), 0);
    unsigned __int128 rem = 0;
    for (size_t i = a.size(); i-- > 0;) {
      unsigned __int128 cur = (rem << 64) | a[i];
      q[i] = static_cast<uint64_t>(cur / d);
      rem = cur % d;
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    r.clear();
    if (rem) r.push_back(static_cast<uint64_t>(rem));
    return;
  }
  unsigned shift = 64 - bitlen_u64(b.back());
  std::vector<uint64_t> u = a, v = b;
  shl_mag(u, shift);
  shl_mag(v, shift);
  size_t n = v.size(), m = u.size() - n;
  u.resize(u.size() + 1, 0);
  q.assign(m + 1, 0);
  const uint64_t vn1 = v[n - 1], vn2 = v[n - 2];
  for (size_t j = m + 1; j-- > 0;) {
    unsigned __int128 top =
        (static_cast<unsigned __int128>(u[j + n]) << 64) | u[j + n - 1];
    unsigned __int128 qhat = top / vn1;
    unsigned __int128 rhat = top % vn1;
    while (qhat >> 64 ||
           qhat * vn2 > ((rhat << 64) | u[j + n - 2])) {
      --qhat;
      rhat += vn1;
      if (rhat >> 64) break;
    }
    // Multiply-subtract qhat*v from u[j..j+n].
    unsigned __int128 borrow = 0, carry = 0;
    for (size_t i = 0; i < n; ++i) {
      unsigned __int128 p = qhat * v[i] + carry;
      carry = p >> 64;
      unsigned __int128 d = static_cast<unsigned __int128>(u[i + j]) -
                            static_cast<uint64_t>(p) - borrow;
      u[i + j] = static_cast<uint64_t>(d);
      borrow = (d >> 64) ? 1 : 0;
    }
    unsigned __int128 d = static_cast<unsigned __int128>(u[j + n]) - carry -
                          borrow;
    u[j + n] = static_cast<uint64_t>(d);
    if (d >> 64) {  // qhat was one too large: add back
      --qhat;
      unsigned __int128 c = 0;
      for (size_t i = 0; i < n; ++i) {
        unsigned __int128 s =
            static_cast<unsigned __int128>(u[i + j]) + v[i] + c;
        u[i + j] = static_cast<uint64_t>(s);
        c = s >> 64;
      }
      u[j + n] += static_cast<uint64_t>(c);
    }
    q[j] = static_cast<uint64_t>(qhat);
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
  u.resize(n);
  shr_mag(u, shift);
  r = std::move(u);
}

ExactScalar ExactScalar::neg_slow() const {
  auto big = std::make_unique<Big>(*big_);
  big->sign = -big->sign;
  return ExactScalar(std::move(big));
}

ExactScalar ExactScalar::add_slow(const ExactScalar& o) const {
  int sa = sign(), sb = o.sign();
  if (sa == 0) return o;
  if (sb == 0) return *this;
  auto ma = magnitude(), mb = o.magnitude();
  if (sa == sb) return make(sa, add_mag(ma, mb));
  int c = cmp_mag(ma, mb);
  if (c == 0) return ExactScalar();
  if (c > 0) return make(sa, sub_mag(ma, mb));
  return make(sb, sub_mag(mb, ma));
}

ExactScalar ExactScalar::mul_slow(const ExactScalar& o) const {
  int s = sign() * o.sign();
  if (s == 0) return ExactScalar();
  return make(s, mul_mag(magnitude(), o.magnitude()));
}

void ExactScalar::divmod(const ExactScalar& a, const ExactScalar& b,
                         ExactScalar& q, ExactScalar& r) {
  if (b.is_zero()) throw std::domain_error("ExactScalar: division by zero");
  if (!a.big_ && !b.big_) {
    q = from_int128(a.v_ / b.v_);
    r = from_int128(a.v_ % b.v_);
    return;
  }
  std::vector<uint64_t> qm, rm;
  divmod_mag(a.magnitude(), b.magnitude(), qm, rm);
  int qs = a.sign() * b.sign();
  q = qm.empty() ? ExactScalar() : make(qs, std::move(qm));
  r = rm.empty() ? ExactScalar() : make(a.sign(), std::move(rm));
}

ExactScalar ExactScalar::operator/(const ExactScalar& o) const {
  ExactScalar q, r;
  divmod(*this, o, q, r);
  return q;
}

ExactScalar ExactScalar::operator%(const ExactScalar& o) const {
  ExactScalar q, r;
  divmod(*this, o, q, r);
  return r;
}

ExactScalar ExactScalar::gcd(const ExactScalar& a, const ExactScalar& b) {
  if (a.is_zero()) return b.abs();
  if (b.is_zero()) return a.abs();
  if (!a.big_ && !b.big_) {
    unsigned __int128 x = uabs128(a.v_), y = uabs128(b.v_);
    unsigned shift = __builtin_ctzll(static_cast<uint64_t>(x | y) |
                                     (uint64_t(1) << 63));
    // binary gcd on u128
    auto tz = [](unsigned __int128 v) -> unsigned {
      uint64_t lo = static_cast<uint64_t>(v);
      if (lo) return __builtin_ctzll(lo);
      return 64 + __builtin_ctzll(static_cast<uint64_t>(v >> 64));
    };
    unsigned k = std::min(tz(x), tz(y));
    x >>= tz(x);
    while (y) {
      y >>= tz(y);
      if (x > y) std::swap(x, y);
      y -= x;
    }
    (void)shift;
    return from_int128(static_cast<__int128>(x << k));
  }
  std::vector<uint64_t> x = a.magnitude(), y = b.magnitude();
  unsigned kx = trailing_zero_bits(x), ky = trailing_zero_bits(y);
  unsigned k = std::min(kx, ky);
  shr_mag(x, kx);
  while (!y.empty()) {
    shr_mag(y, trailing_zero_bits(y));
    if (cmp_mag(x, y) > 0) std::swap(x, y);
    y = sub_mag(y, x);
  }
  shl_mag(x, k);
  return make(1, std::move(x));
}

ExactScalar ExactScalar::abs() const { return sign() < 0 ? -*this : *this; }

int ExactScalar::cmp_slow(const ExactScalar& o) const {
  int sa = sign(), sb = o.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  int c = cmp_mag(magnitude(), o.magnitude());
  return sa >= 0 ? c : -c;
}

bool ExactScalar::fits_int64() const {
  if (big_) return false;
  return v_ >= INT64_MIN && v_ <= INT64_MAX;
}

long long ExactScalar::to_int64() const {
  assert(fits_int64());
  return static_cast<long long>(v_);
}

double ExactScalar::to_double() const {
  if (!big_) {
    unsigned __int128 u = uabs128(v_);
    double m = std::ldexp(static_cast<double>(static_cast<uint64_t>(u >> 64)),
                          64) +
               static_cast<double>(static_cast<uint64_t>(u));
    return v_ < 0 ? -m : m;
  }
  double r = 0;
  for (size_t i = big_->mag.size(); i-- > 0;)
    r = r * std::ldexp(1.0, 64) + static_cast<double>(big_->mag[i]);
  return big_->sign < 0 ? -r : r;
}

size_t ExactScalar::bit_length() const {
  if (!big_) return bitlen_u128(uabs128(v_));
  return (big_->mag.size() - 1) * 64 + bitlen_u64(big_->mag.back());
}

std::string ExactScalar::to_string() const {
  if (is_zero()) return "0";
  std::vector<uint64_t> m = magnitude();
  std::string out;
  while (!m.empty()) {
    // divide by 10^18
    unsigned __int128 rem = 0;
    for (size_t i = m.size(); i-- > 0;) {
      unsigned __int128 cur = (rem << 64) | m[i];
      m[i] = static_cast<uint64_t>(cur / 1000000000000000000ULL);
      rem = cur % 1000000000000000000ULL;
    }
    while (!m.empty() && m.back() == 0) m.pop_back();
    uint64_t chunk = static_cast<uint64_t>(rem);
    for (int d = 0; d < 18; ++d) {
      out.push_back(static_cast<char>('0' + chunk % 10));
      chunk /= 10;
      if (m.empty() && chunk == 0) break;
    }
  }
  while (out.size() > 1 && out.back() == '0') out.pop_back();
  if (sign() < 0) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

ExactScalar ExactScalar::from_string(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  bool neg = false;
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("bad integer literal");
  ExactScalar r;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("bad digit in integer literal");
    r = r * ExactScalar(10) + ExactScalar(s[i] - '0');
  }
  return neg ? -r : r;
}

// ---------------------------------------------------------------------------

Rational::Rational(ExactScalar n, ExactScalar d) {
  if (d.is_zero()) throw std::domain_error("Rational: zero denominator");
  if (d.sign() < 0) {
    n = -n;
    d = -d;
  }
  if (n.is_zero()) {
    num_ = ExactScalar();
    den_ = ExactScalar(1);
    return;
  }
  ExactScalar g = ExactScalar::gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

Rational Rational::from_string(std::string_view s) {
  size_t slash = s.find('/');
  if (slash == std::string_view::npos)
    return Rational(ExactScalar::from_string(s));
  return Rational(ExactScalar::from_string(s.substr(0, slash)),
                  ExactScalar::from_string(s.substr(slash + 1)));
}

bool Rational::is_integer() const {
  return den_ == ExactScalar(1);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(num_ * o.den_, den_ * o.num_);
}

int Rational::cmp(const Rational& o) const {
  // dens positive, so cross-multiplication preserves order
  if (den_ == o.den_) return num_.cmp(o.num_);
  return (num_ * o.den_).cmp(o.num_ * den_);
}

double Rational::to_double() const {
  return num_.to_double() / den_.to_double();
}

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

}  // namespace hop
