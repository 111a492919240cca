#pragma once

#include <cstdint>
#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hop {

// Arbitrary-precision signed integer with an inline __int128 fast path.
// Values with |v| <= 2^125 are stored inline; larger magnitudes spill to a
// limb vector.  All arithmetic is exact; comparisons are a total order.
class ExactScalar {
 public:
  ExactScalar() : v_(0) {}
  ExactScalar(long long x) : v_(x) {}          // NOLINT: implicit by design
  ExactScalar(long x) : v_(x) {}               // NOLINT
  ExactScalar(int x) : v_(x) {}                // NOLINT
  ExactScalar(unsigned long long x) : v_(static_cast<__int128>(x)) {}

  ExactScalar(const ExactScalar& o) : v_(o.v_) {
    if (o.big_) big_ = std::make_unique<Big>(*o.big_);
  }
  ExactScalar(ExactScalar&&) noexcept = default;
  ExactScalar& operator=(const ExactScalar& o) {
    if (this != &o) {
      v_ = o.v_;
      big_ = o.big_ ? std::make_unique<Big>(*o.big_) : nullptr;
    }
    return *this;
  }
  ExactScalar& operator=(ExactScalar&&) noexcept = default;

  static ExactScalar from_int128(__int128 v) {
    if (v >= -kSmallMax && v <= kSmallMax) {
      ExactScalar r;
      r.v_ = v;
      return r;
    }
    return from_int128_slow(v);
  }
  static ExactScalar from_string(std::string_view s);  // decimal, optional sign

  int sign() const {
    if (big_) return big_->sign;
    return v_ > 0 ? 1 : (v_ < 0 ? -1 : 0);
  }
  bool is_zero() const { return !big_ && v_ == 0; }
  bool is_small() const { return !big_; }
  __int128 small_value() const { return v_; }  // valid only if is_small()

  bool fits_int64() const;
  long long to_int64() const;  // valid only if fits_int64()
  double to_double() const;
  std::string to_string() const;
  size_t bit_length() const;  // bits of |value|; 0 for zero

  ExactScalar operator-() const {
    if (!big_) {
      ExactScalar r;
      r.v_ = -v_;
      return r;
    }
    return neg_slow();
  }
  ExactScalar operator+(const ExactScalar& o) const {
    if (!big_ && !o.big_) return from_int128(v_ + o.v_);
    return add_slow(o);
  }
  ExactScalar operator-(const ExactScalar& o) const {
    if (!big_ && !o.big_) return from_int128(v_ - o.v_);
    return add_slow(-o);
  }
  ExactScalar operator*(const ExactScalar& o) const {
    if (!big_ && !o.big_ &&
        bitlen128(v_) + bitlen128(o.v_) <= 126) {
      ExactScalar r;
      r.v_ = v_ * o.v_;
      return r;
    }
    return mul_slow(o);
  }
  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

  // Truncated division: q = trunc(a/b), r = a - q*b (sign of r follows a).
  static void divmod(const ExactScalar& a, const ExactScalar& b,
                     ExactScalar& q, ExactScalar& r);
  ExactScalar operator/(const ExactScalar& o) const;
  ExactScalar operator%(const ExactScalar& o) const;

  static ExactScalar gcd(const ExactScalar& a, const ExactScalar& b);
  ExactScalar abs() const;

  int cmp(const ExactScalar& o) const {
    if (!big_ && !o.big_) return v_ < o.v_ ? -1 : (v_ > o.v_ ? 1 : 0);
    return cmp_slow(o);
  }
  bool operator==(const ExactScalar& o) const { return cmp(o) == 0; }
  bool operator!=(const ExactScalar& o) const { return cmp(o) != 0; }
  bool operator<(const ExactScalar& o) const { return cmp(o) < 0; }
  bool operator<=(const ExactScalar& o) const { return cmp(o) <= 0; }
  bool operator>(const ExactScalar& o) const { return cmp(o) > 0; }
  bool operator>=(const ExactScalar& o) const { return cmp(o) >= 0; }

 private:
  struct Big {
    int sign = 0;                 // -1 or +1; zero is never stored big
    std::vector<uint64_t> mag;    // little-endian, no leading zero limbs
  };

  static constexpr __int128 kSmallMax =
      (static_cast<__int128>(1) << 125);

  static int bitlen128(__int128 v) {
    unsigned __int128 u =
        v < 0 ? -static_cast<unsigned __int128>(v)
              : static_cast<unsigned __int128>(v);
    uint64_t hi = static_cast<uint64_t>(u >> 64);
    if (hi) return 128 - __builtin_clzll(hi);
    uint64_t lo = static_cast<uint64_t>(u);
    return lo ? 64 - __builtin_clzll(lo) : 0;
  }

  static ExactScalar from_int128_slow(__int128 v);
  ExactScalar neg_slow() const;
  ExactScalar add_slow(const ExactScalar& o) const;
  ExactScalar mul_slow(const ExactScalar& o) const;
  int cmp_slow(const ExactScalar& o) const;

  explicit ExactScalar(std::unique_ptr<Big> b) : v_(0), big_(std::move(b)) {}

  void normalize();  // demote big to small when it fits

  static std::vector<uint64_t> mag_of_u128(unsigned __int128 m);
  std::vector<uint64_t> magnitude() const;  // |value| as limbs

  static int cmp_mag(const std::vector<uint64_t>& a,
                     const std::vector<uint64_t>& b);
  static std::vector<uint64_t> add_mag(const std::vector<uint64_t>& a,
                                       const std::vector<uint64_t>& b);
  static std::vector<uint64_t> sub_mag(const std::vector<uint64_t>& a,
                                       const std::vector<uint64_t>& b);
  static std::vector<uint64_t> mul_mag(const std::vector<uint64_t>& a,
                                       const std::vector<uint64_t>& b);
  static void divmod_mag(const std::vector<uint64_t>& a,
                         const std::vector<uint64_t>& b,
                         std::vector<uint64_t>& q, std::vector<uint64_t>& r);
  static ExactScalar make(int sign, std::vector<uint64_t> mag);

  __int128 v_;
  std::unique_ptr<Big> big_;
};

// Reduced fraction with positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(ExactScalar n) : num_(std::move(n)), den_(1) {}  // NOLINT
  Rational(long long n) : num_(n), den_(1) {}               // NOLINT
  Rational(long n) : num_(n), den_(1) {}                     // NOLINT
  Rational(int n) : num_(n), den_(1) {}                     // NOLINT
  Rational(ExactScalar n, ExactScalar d);  // reduces; requires d != 0

  static Rational from_string(std::string_view s);  // "a" or "a/b"

  const ExactScalar& num() const { return num_; }
  const ExactScalar& den() const { return den_; }
  int sign() const { return num_.sign(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const;

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // requires o != 0
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  int cmp(const Rational& o) const;
  bool operator==(const Rational& o) const { return cmp(o) == 0; }
  bool operator!=(const Rational& o) const { return cmp(o) != 0; }
  bool operator<(const Rational& o) const { return cmp(o) < 0; }
  bool operator<=(const Rational& o) const { return cmp(o) <= 0; }
  bool operator>(const Rational& o) const { return cmp(o) > 0; }
  bool operator>=(const Rational& o) const { return cmp(o) >= 0; }

  double to_double() const;
  std::string to_string() const;  // "a" when integral, else "a/b"

 private:
  ExactScalar num_, den_;
};

}  // namespace hop
