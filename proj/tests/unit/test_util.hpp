#pragma once

#include <vector>

#include "skewmin/field.hpp"
#include "skewmin/rng.hpp"
#include "skewmin/skew_poly.hpp"

namespace testutil {

using namespace skewmin;

// F_4 = F_2[z]/(z^2 + z + 1)
inline FieldRef f4() { return make_field(2, 2, {1, 1, 1}); }
// F_8 = F_2[z]/(z^3 + z + 1)
inline FieldRef f8() { return make_field(2, 3, {1, 1, 0, 1}); }
// F_9 = F_3[z]/(z^2 + 1)
inline FieldRef f9() { return make_field(3, 2, {1, 0, 1}); }
// F_16 = F_2[z]/(z^4 + z + 1)
inline FieldRef f16() { return make_field(2, 4, {1, 1, 0, 0, 1}); }
// F_256 = F_2[z]/(z^8 + z^4 + z^3 + z^2 + 1)
inline FieldRef f256() { return make_field(2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}); }

inline FieldElement el(const FieldRef& f, std::uint64_t n) {
    return FieldElement::from_uint(f, n);
}

inline SkewPoly poly(const FieldRef& f, const std::vector<std::uint64_t>& coeffs) {
    std::vector<FieldElement> c;
    c.reserve(coeffs.size());
    for (auto v : coeffs) c.push_back(el(f, v));
    return SkewPoly(f, std::move(c));
}

}  // namespace testutil
