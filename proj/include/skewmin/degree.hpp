#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <ostream>

namespace skewmin {

// Degree of a polynomial or vector: an integer or -infinity (degree of the
// zero polynomial). Minus infinity compares below every integer and is
// absorbing under addition.
class Degree {
  public:
    constexpr Degree() : finite_(false), v_(0) {}
    constexpr explicit Degree(std::int64_t v) : finite_(true), v_(v) {}

    static constexpr Degree minus_infinity() { return Degree(); }

    constexpr bool is_finite() const { return finite_; }
    constexpr std::int64_t get() const {
        assert(finite_);
        return v_;
    }

    friend constexpr bool operator==(const Degree& a, const Degree& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }
    friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
        if (!a.finite_ && !b.finite_) return std::strong_ordering::equal;
        if (!a.finite_) return std::strong_ordering::less;
        if (!b.finite_) return std::strong_ordering::greater;
        return a.v_ <=> b.v_;
    }
    friend constexpr bool operator==(const Degree& a, std::int64_t b) {
        return a.finite_ && a.v_ == b;
    }
    friend constexpr std::strong_ordering operator<=>(const Degree& a, std::int64_t b) {
        if (!a.finite_) return std::strong_ordering::less;
        return a.v_ <=> b;
    }

    constexpr Degree operator+(std::int64_t k) const {
        return finite_ ? Degree(v_ + k) : minus_infinity();
    }
    constexpr Degree operator+(const Degree& o) const {
        return (finite_ && o.finite_) ? Degree(v_ + o.v_) : minus_infinity();
    }

    friend std::ostream& operator<<(std::ostream& os, const Degree& d) {
        if (d.finite_) return os << d.v_;
        return os << "-inf";
    }

  private:
    bool finite_;
    std::int64_t v_;
};

}  // namespace skewmin
