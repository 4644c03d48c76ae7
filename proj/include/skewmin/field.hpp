#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "skewmin/counters.hpp"

namespace skewmin {

namespace detail {

// Helpers for polynomials over the prime field F_p, represented as
// little-endian coefficient vectors with entries in [0, p).

inline void fp_trim(std::vector<std::uint32_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

inline std::uint32_t fp_inv_scalar(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on integers
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a % p;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw std::invalid_argument("not invertible mod p");
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

// a mod b over F_p, in place on a; b must be non-empty with unit-free lead.
inline void fp_mod_inplace(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                           std::uint32_t p) {
    const std::size_t db = b.size() - 1;
    const std::uint32_t lead_inv = fp_inv_scalar(b.back(), p);
    while (a.size() > db) {
        const std::size_t da = a.size() - 1;
        const std::uint64_t q = (static_cast<std::uint64_t>(a.back()) * lead_inv) % p;
        if (q != 0) {
            const std::size_t shift = da - db;
            for (std::size_t i = 0; i <= db; ++i) {
                std::uint64_t sub = (q * b[i]) % p;
                std::uint64_t cur = a[shift + i];
                a[shift + i] = static_cast<std::uint32_t>((cur + p - sub) % p);
            }
        }
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.size() <= db) break;
    }
}

inline bool fp_is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Irreducibility over F_p by trial division against all monic polynomials of
// degree <= m/2. Fine at the field sizes this library targets (m <= 16).
inline bool fp_is_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p) {
    const std::size_t m = f.size() - 1;
    for (std::size_t d = 1; 2 * d <= m; ++d) {
        // enumerate monic divisor candidates of degree d
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::uint32_t> g(d + 1);
            std::uint64_t t = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            g[d] = 1;
            std::vector<std::uint32_t> r = f;
            fp_mod_inplace(r, g, p);
            if (r.empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

class FieldParams;
using FieldRef = std::shared_ptr<const FieldParams>;

// Parameters of F_{p^m} in polynomial-basis representation, together with the
// Frobenius twist theta(a) = a^{p^s}. Immutable after construction and safe
// to share across threads.
class FieldParams {
  public:
    FieldParams(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus,
                std::uint32_t s = 1)
        : p_(p), m_(m), s_(s), modulus_(std::move(modulus)) {
        if (!detail::fp_is_prime(p_)) throw std::invalid_argument("p is not prime");
        if (m_ < 1) throw std::invalid_argument("extension degree must be >= 1");
        if (s_ < 1 || s_ > m_) throw std::invalid_argument("frobenius exponent s must satisfy 1 <= s <= m");
        if (modulus_.size() != m_ + 1) throw std::invalid_argument("modulus must have degree m");
        for (auto c : modulus_)
            if (c >= p_) throw std::invalid_argument("modulus coefficient out of range");
        if (modulus_.back() != 1) throw std::invalid_argument("modulus must be monic");
        if (!detail::fp_is_irreducible(modulus_, p_))
            throw std::invalid_argument("modulus is not irreducible over F_p");
        order_ = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            if (order_ > (std::uint64_t(1) << 62) / p_)
                throw std::invalid_argument("field too large for canonical integer encoding");
            order_ *= p_;
        }
        theta_order_ = m_ / std::gcd(m_, s_);
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t s() const { return s_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    // number of field elements, p^m
    std::uint64_t order() const { return order_; }
    // multiplicative order of theta as an automorphism, m / gcd(m, s)
    std::uint32_t theta_order() const { return theta_order_; }
    // degree over F_p of the fixed field of theta
    std::uint32_t fixed_degree() const { return std::gcd(m_, s_); }

    bool same(const FieldParams& o) const {
        return p_ == o.p_ && m_ == o.m_ && s_ == o.s_ && modulus_ == o.modulus_;
    }

  private:
    std::uint32_t p_, m_, s_;
    std::vector<std::uint32_t> modulus_;
    std::uint64_t order_;
    std::uint32_t theta_order_;
};

inline FieldRef make_field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus,
                           std::uint32_t s = 1) {
    return std::make_shared<FieldParams>(p, m, std::move(modulus), s);
}

// Element of F_{p^m}: m coordinates over F_p, little-endian in the power
// basis of the modulus root. Plain value type; all arithmetic is exact.
class FieldElement {
  public:
    FieldElement() = default;

    FieldElement(FieldRef f, std::vector<std::uint32_t> coeffs)
        : f_(std::move(f)), c_(std::move(coeffs)) {
        if (c_.size() != f_->m()) throw std::invalid_argument("coefficient vector must have length m");
        for (auto x : c_)
            if (x >= f_->p()) throw std::invalid_argument("coefficient out of range");
    }

    static FieldElement zero(const FieldRef& f) {
        return FieldElement(f, std::vector<std::uint32_t>(f->m(), 0), unchecked{});
    }
    static FieldElement one(const FieldRef& f) {
        std::vector<std::uint32_t> v(f->m(), 0);
        v[0] = 1;
        return FieldElement(f, std::move(v), unchecked{});
    }
    // canonical integer encoding: sum coeffs[i] * p^i
    static FieldElement from_uint(const FieldRef& f, std::uint64_t n) {
        if (n >= f->order()) throw std::invalid_argument("encoded element out of range");
        std::vector<std::uint32_t> v(f->m());
        for (std::uint32_t i = 0; i < f->m(); ++i) {
            v[i] = static_cast<std::uint32_t>(n % f->p());
            n /= f->p();
        }
        return FieldElement(f, std::move(v), unchecked{});
    }

    std::uint64_t to_uint() const {
        std::uint64_t n = 0;
        for (std::size_t i = c_.size(); i-- > 0;) n = n * f_->p() + c_[i];
        return n;
    }

    bool valid() const { return f_ != nullptr; }
    const FieldRef& field() const { return f_; }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }

    bool is_zero() const {
        for (auto x : c_)
            if (x != 0) return false;
        return true;
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check_same_field(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_same_field(b);
        detail::count_add();
        FieldElement r = a;
        const std::uint32_t p = r.f_->p();
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            r.c_[i] += b.c_[i];
            if (r.c_[i] >= p) r.c_[i] -= p;
        }
        return r;
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check_same_field(b);
        detail::count_add();
        FieldElement r = a;
        const std::uint32_t p = r.f_->p();
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            r.c_[i] += p - b.c_[i];
            if (r.c_[i] >= p) r.c_[i] -= p;
        }
        return r;
    }
    FieldElement operator-() const {
        FieldElement r = *this;
        const std::uint32_t p = f_->p();
        for (auto& x : r.c_)
            if (x != 0) x = p - x;
        return r;
    }

    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_same_field(b);
        detail::count_mul();
        return a.mul_raw(b);
    }

    FieldElement inv() const {
        if (is_zero()) throw std::invalid_argument("division by zero");
        detail::count_inv();
        return inv_raw();
    }

    // theta^k, k may be negative; theta(a) = a^{p^s}
    FieldElement frobenius(std::int64_t k) const {
        detail::count_frob();
        return frobenius_raw(k);
    }

    FieldElement pow(std::uint64_t e) const {
        FieldElement r = one(f_);
        FieldElement base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

  private:
    struct unchecked {};
    FieldElement(FieldRef f, std::vector<std::uint32_t> coeffs, unchecked)
        : f_(std::move(f)), c_(std::move(coeffs)) {}

    void check_same_field(const FieldElement& o) const {
        if (f_ == o.f_) return;
        if (f_ && o.f_ && f_->same(*o.f_)) return;
        throw std::invalid_argument("field mismatch");
    }

    FieldElement mul_raw(const FieldElement& b) const {
        const std::uint32_t p = f_->p();
        const std::uint32_t m = f_->m();
        std::vector<std::uint64_t> prod(2 * m - 1, 0);
        for (std::uint32_t i = 0; i < m; ++i) {
            if (c_[i] == 0) continue;
            const std::uint64_t ai = c_[i];
            for (std::uint32_t j = 0; j < m; ++j) {
                if (b.c_[j] == 0) continue;
                prod[i + j] = (prod[i + j] + ai * b.c_[j]) % p;
            }
        }
        // reduce mod the (monic) modulus
        const auto& mod = f_->modulus();
        for (std::size_t d = prod.size(); d-- > m;) {
            const std::uint64_t t = prod[d];
            if (t == 0) continue;
            prod[d] = 0;
            for (std::uint32_t i = 0; i < m; ++i) {
                if (mod[i] == 0) continue;
                const std::uint64_t sub = (t * mod[i]) % p;
                prod[d - m + i] = (prod[d - m + i] + p - sub) % p;
            }
        }
        std::vector<std::uint32_t> out(m);
        for (std::uint32_t i = 0; i < m; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
        return FieldElement(f_, std::move(out), unchecked{});
    }

    FieldElement inv_raw() const {
        // extended Euclid in F_p[z] against the modulus
        const std::uint32_t p = f_->p();
        std::vector<std::uint32_t> r0 = f_->modulus();
        std::vector<std::uint32_t> r1 = c_;
        detail::fp_trim(r1);
        std::vector<std::uint32_t> t0, t1{1};
        auto sub_scaled_shifted = [p](std::vector<std::uint32_t>& a,
                                      const std::vector<std::uint32_t>& b, std::uint64_t q,
                                      std::size_t shift) {
            if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
            for (std::size_t i = 0; i < b.size(); ++i) {
                const std::uint64_t sub = (q * b[i]) % p;
                a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
            }
            detail::fp_trim(a);
        };
        while (!r1.empty()) {
            // one division step: r0 -= q * z^shift * r1, t0 likewise
            const std::uint32_t lead_inv = detail::fp_inv_scalar(r1.back(), p);
            while (r0.size() >= r1.size() && !r0.empty()) {
                const std::size_t shift = r0.size() - r1.size();
                const std::uint64_t q = (static_cast<std::uint64_t>(r0.back()) * lead_inv) % p;
                sub_scaled_shifted(r0, r1, q, shift);
                sub_scaled_shifted(t0, t1, q, shift);
            }
            std::swap(r0, r1);
            std::swap(t0, t1);
        }
        if (r0.size() != 1) throw std::runtime_error("internal: gcd with modulus not a unit");
        const std::uint32_t scale = detail::fp_inv_scalar(r0[0], p);
        std::vector<std::uint32_t> out(f_->m(), 0);
        for (std::size_t i = 0; i < t0.size(); ++i)
            out[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(t0[i]) * scale) % p);
        return FieldElement(f_, std::move(out), unchecked{});
    }

    // p-th power, not billed to the op counter
    FieldElement pow_p_raw() const {
        FieldElement r = one(f_);
        FieldElement base = *this;
        std::uint32_t e = f_->p();
        while (e > 0) {
            if (e & 1) r = r.mul_raw(base);
            base = base.mul_raw(base);
            e >>= 1;
        }
        return r;
    }

    FieldElement frobenius_raw(std::int64_t k) const {
        const std::uint32_t ord = f_->theta_order();
        std::int64_t kk = k % ord;
        if (kk < 0) kk += ord;
        // theta^kk : a -> a^{p^((s*kk) mod m)}
        const std::uint64_t j = (static_cast<std::uint64_t>(f_->s()) * kk) % f_->m();
        FieldElement r = *this;
        for (std::uint64_t i = 0; i < j; ++i) r = r.pow_p_raw();
        return r;
    }

    FieldRef f_;
    std::vector<std::uint32_t> c_;
};

}  // namespace skewmin
