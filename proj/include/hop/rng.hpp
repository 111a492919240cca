#pragma once

#include <cstdint>
#include <vector>

namespace hop {

// splitmix64: tiny, fast, and bit-reproducible across platforms (the
// standard distributions are not, which would break instance regeneration).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), n >= 1; rejection sampling keeps it unbiased
  uint64_t below(uint64_t n) {
    uint64_t threshold = (-n) % n;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // uniform in [lo, hi] inclusive
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo) + 1));
  }

  double unit() {  // [0,1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // derive an independent stream (for per-cell / per-instance seeding)
  Rng fork() { return Rng(next() ^ 0xd1b54a32d192ed03ULL); }

  // k distinct indices from [0, n), order unspecified but deterministic
  std::vector<uint32_t> sample_without_replacement(uint32_t n, uint32_t k);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

inline std::vector<uint32_t> Rng::sample_without_replacement(uint32_t n,
                                                             uint32_t k) {
  // Floyd's algorithm
  std::vector<uint32_t> out;
  out.reserve(k);
  if (k >= n) {
    for (uint32_t i = 0; i < n; ++i) out.push_back(i);
    return out;
  }
  std::vector<bool> seen(n, false);
  for (uint32_t j = n - k; j < n; ++j) {
    uint32_t t = static_cast<uint32_t>(below(j + 1));
    if (seen[t]) t = j;
    seen[t] = true;
    out.push_back(t);
  }
  return out;
}

}  // namespace hop
