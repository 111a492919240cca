#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hop/exact.hpp"
#include "hop/rng.hpp"

using hop::ExactScalar;
using hop::Rational;
using hop::Rng;

namespace {

ExactScalar rand_scalar(Rng& rng, int max_bits) {
  int bits = static_cast<int>(rng.below(static_cast<uint64_t>(max_bits))) + 1;
  ExactScalar r = 0;
  for (int got = 0; got < bits; got += 32) {
    r = r * ExactScalar(1LL << 32) +
        ExactScalar(static_cast<long long>(rng.next() & 0xffffffffULL));
  }
  // trim to exactly `bits` via string round trip is overkill; magnitude is fine
  if (rng.below(2)) r = -r;
  return r;
}

}  // namespace

TEST_CASE("small arithmetic agrees with int128") {
  Rng rng(42);
  for (int it = 0; it < 20000; ++it) {
    long long a = rng.range(-1000000000LL, 1000000000LL);
    long long b = rng.range(-1000000000LL, 1000000000LL);
    ExactScalar ea(a), eb(b);
    CHECK((ea + eb).to_string() == std::to_string(a + b));
    CHECK((ea - eb).to_string() == std::to_string(a - b));
    CHECK((ea * eb).to_string() == std::to_string(a * b));
    CHECK((ea.cmp(eb)) == (a < b ? -1 : (a > b ? 1 : 0)));
    if (b != 0) {
      CHECK((ea / eb).to_string() == std::to_string(a / b));
      CHECK((ea % eb).to_string() == std::to_string(a % b));
    }
  }
}

TEST_CASE("ring identities on large values") {
  Rng rng(7);
  for (int it = 0; it < 2000; ++it) {
    ExactScalar a = rand_scalar(rng, 300);
    ExactScalar b = rand_scalar(rng, 300);
    ExactScalar c = rand_scalar(rng, 200);
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(((a * b) * c) == (a * (b * c)));
  }
}

TEST_CASE("divmod invariant a = q*b + r, |r| < |b|, sign(r) = sign(a)") {
  Rng rng(99);
  for (int it = 0; it < 3000; ++it) {
    ExactScalar a = rand_scalar(rng, 320);
    ExactScalar b = rand_scalar(rng, 160);
    if (b.is_zero()) continue;
    ExactScalar q, r;
    ExactScalar::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
    if (!r.is_zero()) CHECK(r.sign() == a.sign());
  }
}

TEST_CASE("gcd divides and is maximal on random pairs") {
  Rng rng(5);
  for (int it = 0; it < 1000; ++it) {
    ExactScalar a = rand_scalar(rng, 180);
    ExactScalar b = rand_scalar(rng, 180);
    ExactScalar g = ExactScalar::gcd(a, b);
    if (a.is_zero() && b.is_zero()) {
      CHECK(g.is_zero());
      continue;
    }
    CHECK(g.sign() > 0);
    CHECK((a % g).is_zero());
    CHECK((b % g).is_zero());
    // g is the gcd, not just a divisor: gcd(a/g, b/g) = 1
    CHECK(ExactScalar::gcd(a / g, b / g) == ExactScalar(1));
  }
}

TEST_CASE("decimal string round trip") {
  Rng rng(13);
  CHECK(ExactScalar(0).to_string() == "0");
  CHECK(ExactScalar::from_string("-0").to_string() == "0");
  CHECK(ExactScalar::from_string("123456789012345678901234567890").to_string()
        == "123456789012345678901234567890");
  for (int it = 0; it < 500; ++it) {
    ExactScalar a = rand_scalar(rng, 400);
    CHECK(ExactScalar::from_string(a.to_string()) == a);
  }
  CHECK_THROWS(ExactScalar::from_string(""));
  CHECK_THROWS(ExactScalar::from_string("12x"));
}

TEST_CASE("scalar boundary cases around the small/big split") {
  ExactScalar one = 1;
  ExactScalar big = one;
  for (int i = 0; i < 130; ++i) big = big * ExactScalar(2);
  ExactScalar back = big;
  for (int i = 0; i < 130; ++i) back = back / ExactScalar(2);
  CHECK(back == one);
  CHECK(big.bit_length() == 131);
  CHECK((big - big).is_zero());
  CHECK(big + (-big) == ExactScalar(0));
}

TEST_CASE("rational reduction and ordering") {
  Rational half(ExactScalar(1), ExactScalar(2));
  Rational half2(ExactScalar(-3), ExactScalar(-6));
  CHECK(half == half2);
  CHECK(half.den() == ExactScalar(2));
  CHECK(half2.num() == ExactScalar(1));
  CHECK(Rational::from_string("4/6") == Rational(ExactScalar(2), ExactScalar(3)));
  CHECK(Rational::from_string("-7") == Rational(-7));
  CHECK_THROWS(Rational(ExactScalar(1), ExactScalar(0)));

  Rng rng(21);
  for (int it = 0; it < 3000; ++it) {
    long long an = rng.range(-1000, 1000), ad = rng.range(1, 1000);
    long long bn = rng.range(-1000, 1000), bd = rng.range(1, 1000);
    Rational a{ExactScalar(an), ExactScalar(ad)};
    Rational b{ExactScalar(bn), ExactScalar(bd)};
    double da = double(an) / double(ad), db = double(bn) / double(bd);
    if (da < db - 1e-9) CHECK(a < b);
    if (da > db + 1e-9) CHECK(a > b);
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(ExactScalar::gcd(a.num(), a.den()) == ExactScalar(1));
  }
}

TEST_CASE("rational sums telescope exactly") {
  // sum of 1/(k(k+1)) = 1 - 1/(n+1)
  Rational sum(0);
  int n = 60;
  for (int k = 1; k <= n; ++k)
    sum += Rational(ExactScalar(1), ExactScalar(1LL * k * (k + 1)));
  CHECK(sum == Rational(ExactScalar(n), ExactScalar(n + 1)));
}
