#pragma once

#include <atomic>
#include <cstdint>

namespace hop::stats {

// Exact-predicate evaluation counter.  Thread-local so OpenMP workers count
// without contention; parallel kernels fold their deltas into a shared total
// via ThreadDelta.
inline thread_local uint64_t predicate_evals = 0;

inline void bump() { ++predicate_evals; }
inline void bump(uint64_t k) { predicate_evals += k; }

// Snapshot of this thread's counter; delta() reports evals since creation.
struct Scope {
  uint64_t start;
  Scope() : start(predicate_evals) {}
  uint64_t delta() const { return predicate_evals - start; }
};

// Accumulates per-thread deltas from a parallel region into one total.
struct ThreadDelta {
  std::atomic<uint64_t> total{0};
  void fold(uint64_t d) { total.fetch_add(d, std::memory_order_relaxed); }
};

}  // namespace hop::stats
