#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "skewmin/field.hpp"
#include "skewmin/skew_poly.hpp"

namespace skewmin {

// Deterministic random source: std::mt19937_64 (a fixed sequence per the
// C++ standard) with rejection sampling, so streams are identical across
// platforms and library versions. Golden files depend on this.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // uniform on [0, n)
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("empty range");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    // uniform on [lo, hi], inclusive
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("empty range");
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

  private:
    std::mt19937_64 gen_;
};

inline FieldElement random_element(const FieldRef& f, Rng& rng) {
    return FieldElement::from_uint(f, rng.below(f->order()));
}

inline FieldElement random_nonzero(const FieldRef& f, Rng& rng) {
    return FieldElement::from_uint(f, 1 + rng.below(f->order() - 1));
}

// random polynomial of exact degree `deg` (deg < 0 gives the zero polynomial)
inline SkewPoly random_poly_of_degree(const FieldRef& f, std::int64_t deg, Rng& rng) {
    if (deg < 0) return SkewPoly::zero(f);
    std::vector<FieldElement> c;
    c.reserve(static_cast<std::size_t>(deg) + 1);
    for (std::int64_t i = 0; i < deg; ++i) c.push_back(random_element(f, rng));
    c.push_back(random_nonzero(f, rng));
    return SkewPoly(f, std::move(c));
}

// random polynomial of degree < bound (may be zero)
inline SkewPoly random_poly_below(const FieldRef& f, std::int64_t bound, Rng& rng) {
    std::vector<FieldElement> c;
    c.reserve(static_cast<std::size_t>(std::max<std::int64_t>(bound, 0)));
    for (std::int64_t i = 0; i < bound; ++i) c.push_back(random_element(f, rng));
    return SkewPoly(f, std::move(c));
}

}  // namespace skewmin
