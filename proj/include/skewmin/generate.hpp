#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "skewmin/field.hpp"
#include "skewmin/rng.hpp"
#include "skewmin/shift_register.hpp"

namespace skewmin {

// First monic irreducible polynomial of degree m over F_p in canonical
// (counting) order. Deterministic, so generated instances over the same
// (p, m) always share a modulus.
inline std::vector<std::uint32_t> find_irreducible(std::uint32_t p, std::uint32_t m) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < m; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> f(m + 1);
        std::uint64_t t = idx;
        for (std::uint32_t i = 0; i < m; ++i) {
            f[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        f[m] = 1;
        if (detail::fp_is_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");  // cannot happen
}

enum class InstanceShape { Generic, Monomial, Gao };

inline InstanceShape shape_from_string(const std::string& s) {
    if (s == "generic") return InstanceShape::Generic;
    if (s == "monomial") return InstanceShape::Monomial;
    if (s == "gao") return InstanceShape::Gao;
    throw std::invalid_argument("unknown shape: " + s);
}

struct GenParams {
    std::uint32_t p = 2;
    std::uint32_t m = 3;
    std::uint32_t s = 1;
    std::int64_t ell = 2;
    std::int64_t max_deg_g = 6;   // moduli degrees drawn from [1, max_deg_g]
    std::int64_t max_gamma = 0;   // weights drawn from [0, max_gamma]
    bool exact_degrees = false;   // pin every modulus degree to max_deg_g
    InstanceShape shape = InstanceShape::Generic;
    std::uint64_t seed = 0;
};

// Seed-deterministic random instance. Moduli are non-zero; sequences are
// reduced below their modulus; shape selects the modulus structure:
//   generic  - dense-ish random g_i of individual degrees
//   monomial - g_i = x^{k_i}
//   gao      - one shared dense modulus, every coefficient non-zero
inline ShiftRegisterProblem generate_instance(const GenParams& gp) {
    if (gp.ell < 1) throw std::invalid_argument("ell must be >= 1");
    if (gp.max_deg_g < 1) throw std::invalid_argument("max modulus degree must be >= 1");
    if (gp.max_gamma < 0) throw std::invalid_argument("gamma bound must be >= 0");
    FieldRef f = make_field(gp.p, gp.m, find_irreducible(gp.p, gp.m), gp.s);
    Rng rng(gp.seed);

    std::vector<SkewPoly> g, s;
    auto draw_deg = [&]() {
        return gp.exact_degrees ? gp.max_deg_g : rng.range(1, gp.max_deg_g);
    };
    switch (gp.shape) {
        case InstanceShape::Generic:
            for (std::int64_t i = 0; i < gp.ell; ++i) g.push_back(random_poly_of_degree(f, draw_deg(), rng));
            break;
        case InstanceShape::Monomial:
            for (std::int64_t i = 0; i < gp.ell; ++i) g.push_back(SkewPoly::x_pow(f, draw_deg()));
            break;
        case InstanceShape::Gao: {
            const std::int64_t d = draw_deg();
            std::vector<FieldElement> c;
            for (std::int64_t i = 0; i < d; ++i) c.push_back(random_nonzero(f, rng));
            c.push_back(FieldElement::one(f));
            SkewPoly G(f, std::move(c));
            for (std::int64_t i = 0; i < gp.ell; ++i) g.push_back(G);
            break;
        }
    }
    for (std::int64_t i = 0; i < gp.ell; ++i)
        s.push_back(random_poly_below(f, g[static_cast<std::size_t>(i)].degree().get(), rng));
    std::vector<std::int64_t> gamma;
    for (std::int64_t i = 0; i <= gp.ell; ++i) gamma.push_back(rng.range(0, gp.max_gamma));
    return ShiftRegisterProblem(std::move(f), std::move(s), std::move(g), std::move(gamma));
}

}  // namespace skewmin
