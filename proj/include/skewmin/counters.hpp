#pragma once

#include <algorithm>
#include <cstdint>

namespace skewmin {

// Field-operation tally. Additions, multiplications, inversions and
// Frobenius applications are counted separately; a Frobenius application
// counts once here even though it internally costs O(log |F|) base-field
// multiplications (those are not billed to `mul`).
struct OpCounter {
    std::uint64_t add = 0;
    std::uint64_t mul = 0;
    std::uint64_t inv = 0;
    std::uint64_t frob = 0;

    std::uint64_t total() const { return add + mul + inv + frob; }

    void reset() { add = mul = inv = frob = 0; }
};

// Live/peak count of skew-polynomial coefficient slots. Used to measure the
// working-set size of the demand-driven solver.
struct CoeffTracker {
    std::int64_t live = 0;
    std::int64_t peak = 0;

    void acquire(std::int64_t n) {
        live += n;
        peak = std::max(peak, live);
    }
    void release(std::int64_t n) { live -= n; }
};

namespace detail {

inline thread_local OpCounter* active_op_counter = nullptr;
inline thread_local CoeffTracker* active_coeff_tracker = nullptr;

inline void count_add() {
    if (active_op_counter) ++active_op_counter->add;
}
inline void count_mul() {
    if (active_op_counter) ++active_op_counter->mul;
}
inline void count_inv() {
    if (active_op_counter) ++active_op_counter->inv;
}
inline void count_frob() {
    if (active_op_counter) ++active_op_counter->frob;
}

inline void track_acquire(std::int64_t n) {
    if (active_coeff_tracker && n != 0) active_coeff_tracker->acquire(n);
}
inline void track_release(std::int64_t n) {
    if (active_coeff_tracker && n != 0) active_coeff_tracker->release(n);
}

}  // namespace detail

// Installs `c` as the op counter for the current thread while in scope.
// Scopes nest; the previous counter is restored on destruction. Counters are
// therefore per-call state: concurrent solver invocations on different
// threads do not share them.
class CounterScope {
  public:
    explicit CounterScope(OpCounter& c) : prev_(detail::active_op_counter) {
        detail::active_op_counter = &c;
    }
    ~CounterScope() { detail::active_op_counter = prev_; }

    CounterScope(const CounterScope&) = delete;
    CounterScope& operator=(const CounterScope&) = delete;

  private:
    OpCounter* prev_;
};

// Same idea for coefficient-storage tracking.
class TrackerScope {
  public:
    explicit TrackerScope(CoeffTracker& t) : prev_(detail::active_coeff_tracker) {
        detail::active_coeff_tracker = &t;
    }
    ~TrackerScope() { detail::active_coeff_tracker = prev_; }

    TrackerScope(const TrackerScope&) = delete;
    TrackerScope& operator=(const TrackerScope&) = delete;

  private:
    CoeffTracker* prev_;
};

}  // namespace skewmin
