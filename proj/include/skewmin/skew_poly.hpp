#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skewmin/counters.hpp"
#include "skewmin/degree.hpp"
#include "skewmin/field.hpp"

namespace skewmin {

// Skew polynomial over F_{p^m} with twist x*a = theta(a)*x (derivation zero).
// Coefficients are little-endian with no trailing zeros; the zero polynomial
// stores no coefficients. Immutable value type from the caller's view.
//
// Storage is reported to the active CoeffTracker (one unit per stored
// coefficient) so solvers can measure their peak working set.
class SkewPoly {
  public:
    SkewPoly() = default;  // zero polynomial with no field; assign before use

    explicit SkewPoly(FieldRef f) : f_(std::move(f)) {
        if (!f_) throw std::invalid_argument("null field");
    }

    SkewPoly(FieldRef f, std::vector<FieldElement> coeffs) : f_(std::move(f)) {
        if (!f_) throw std::invalid_argument("null field");
        for (const auto& c : coeffs)
            if (!c.valid() || !(c.field() == f_ || c.field()->same(*f_)))
                throw std::invalid_argument("field mismatch");
        set_storage(std::move(coeffs));
        trim();
    }

    SkewPoly(const SkewPoly& o) : f_(o.f_), c_(o.c_) { detail::track_acquire(ssize()); }
    SkewPoly(SkewPoly&& o) noexcept : f_(std::move(o.f_)), c_(std::move(o.c_)) {
        // tracked slots move with the vector; the source is left empty
    }
    SkewPoly& operator=(const SkewPoly& o) {
        if (this != &o) {
            detail::track_release(ssize());
            f_ = o.f_;
            c_ = o.c_;
            detail::track_acquire(ssize());
        }
        return *this;
    }
    SkewPoly& operator=(SkewPoly&& o) noexcept {
        if (this != &o) {
            detail::track_release(ssize());
            f_ = std::move(o.f_);
            c_ = std::move(o.c_);
        }
        return *this;
    }
    ~SkewPoly() { detail::track_release(ssize()); }

    static SkewPoly zero(const FieldRef& f) { return SkewPoly(f); }
    static SkewPoly one(const FieldRef& f) { return constant(f, FieldElement::one(f)); }
    static SkewPoly constant(const FieldRef& f, FieldElement c) {
        SkewPoly r(f);
        if (!c.is_zero()) r.set_storage({std::move(c)});
        return r;
    }
    static SkewPoly monomial(const FieldRef& f, FieldElement c, std::int64_t k) {
        if (k < 0) throw std::invalid_argument("negative exponent");
        SkewPoly r(f);
        if (c.is_zero()) return r;
        std::vector<FieldElement> v(static_cast<std::size_t>(k), FieldElement::zero(f));
        v.push_back(std::move(c));
        r.set_storage(std::move(v));
        return r;
    }
    static SkewPoly x_pow(const FieldRef& f, std::int64_t k) {
        return monomial(f, FieldElement::one(f), k);
    }

    const FieldRef& field() const { return f_; }
    bool is_zero() const { return c_.empty(); }
    std::int64_t size() const { return ssize(); }

    Degree degree() const {
        return c_.empty() ? Degree::minus_infinity() : Degree(ssize() - 1);
    }

    // coefficient of x^i; zero outside the stored range
    FieldElement coeff(std::int64_t i) const {
        if (i < 0 || i >= ssize()) return FieldElement::zero(f_);
        return c_[static_cast<std::size_t>(i)];
    }

    const FieldElement& leading_coeff() const {
        if (c_.empty()) throw std::invalid_argument("leading coefficient of zero polynomial");
        return c_.back();
    }

    // exponents carrying a non-zero coefficient, ascending
    std::vector<std::int64_t> support() const {
        std::vector<std::int64_t> s;
        for (std::int64_t i = 0; i < ssize(); ++i)
            if (!c_[static_cast<std::size_t>(i)].is_zero()) s.push_back(i);
        return s;
    }

    // degree of the second-highest exponent with non-zero coefficient
    Degree deg2() const {
        for (std::int64_t i = ssize() - 2; i >= 0; --i)
            if (!c_[static_cast<std::size_t>(i)].is_zero()) return Degree(i);
        return Degree::minus_infinity();
    }

    friend bool operator==(const SkewPoly& a, const SkewPoly& b) {
        if (a.ssize() != b.ssize()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const SkewPoly& a, const SkewPoly& b) { return !(a == b); }

    friend SkewPoly operator+(const SkewPoly& a, const SkewPoly& b) {
        a.check_field(b);
        SkewPoly r = a.ssize() >= b.ssize() ? a : b;
        const SkewPoly& small = a.ssize() >= b.ssize() ? b : a;
        for (std::size_t i = 0; i < small.c_.size(); ++i) r.c_[i] = r.c_[i] + small.c_[i];
        r.trim();
        return r;
    }
    friend SkewPoly operator-(const SkewPoly& a, const SkewPoly& b) { return a + (-b); }
    SkewPoly operator-() const {
        SkewPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    // f * g = sum_{i,j} f_i theta^i(g_j) x^{i+j}
    friend SkewPoly operator*(const SkewPoly& a, const SkewPoly& b) {
        a.check_field(b);
        if (a.is_zero() || b.is_zero()) return SkewPoly(a.f_);
        SkewPoly r(a.f_);
        std::vector<FieldElement> out(a.c_.size() + b.c_.size() - 1,
                                      FieldElement::zero(a.f_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                out[i + j] = out[i + j] + a.c_[i] * b.c_[j].frobenius(static_cast<std::int64_t>(i));
            }
        }
        r.set_storage(std::move(out));
        r.trim();
        return r;
    }

    // c * f with c constant (degree zero, so no twist)
    SkewPoly scaled_left(const FieldElement& c) const {
        if (c.is_zero() || is_zero()) return SkewPoly(f_);
        SkewPoly r = *this;
        for (auto& x : r.c_) x = c * x;
        r.trim();
        return r;
    }

    // f * x^k: exponents shift up, coefficients untouched
    SkewPoly shifted_right(std::int64_t k) const {
        if (k < 0) throw std::invalid_argument("negative shift");
        if (is_zero() || k == 0) return *this;
        SkewPoly r(f_);
        std::vector<FieldElement> out(static_cast<std::size_t>(k), FieldElement::zero(f_));
        out.insert(out.end(), c_.begin(), c_.end());
        r.set_storage(std::move(out));
        return r;
    }

    // exact division by x^k on the right; nullopt when a low coefficient is non-zero
    std::optional<SkewPoly> unshifted_right(std::int64_t k) const {
        if (k < 0) throw std::invalid_argument("negative shift");
        if (is_zero() || k == 0) return *this;
        if (ssize() <= k) return std::nullopt;
        for (std::int64_t i = 0; i < k; ++i)
            if (!c_[static_cast<std::size_t>(i)].is_zero()) return std::nullopt;
        SkewPoly r(f_);
        r.set_storage(std::vector<FieldElement>(c_.begin() + static_cast<std::size_t>(k), c_.end()));
        return r;
    }

    // (c x^k) * f = sum_i c * theta^k(f_i) x^{k+i}
    SkewPoly mul_monomial_left(const FieldElement& c, std::int64_t k) const {
        SkewPoly r(f_);
        if (c.is_zero() || is_zero()) return r;
        std::vector<FieldElement> out(static_cast<std::size_t>(k), FieldElement::zero(f_));
        out.reserve(c_.size() + static_cast<std::size_t>(k));
        for (const auto& fc : c_)
            out.push_back(fc.is_zero() ? FieldElement::zero(f_) : c * fc.frobenius(k));
        r.set_storage(std::move(out));
        r.trim();
        return r;
    }

    // this -= (c x^k) * g, in place
    void sub_mul_monomial_left(const FieldElement& c, std::int64_t k, const SkewPoly& g) {
        check_field(g);
        if (c.is_zero() || g.is_zero()) return;
        resize_storage(std::max(ssize(), g.ssize() + k));
        for (std::int64_t i = 0; i < g.ssize(); ++i) {
            const auto& gc = g.c_[static_cast<std::size_t>(i)];
            if (gc.is_zero()) continue;
            auto& dst = c_[static_cast<std::size_t>(i + k)];
            dst = dst - c * gc.frobenius(k);
        }
        trim();
    }

  private:
    void check_field(const SkewPoly& o) const {
        if (f_ == o.f_ || f_->same(*o.f_)) return;
        throw std::invalid_argument("field mismatch");
    }

    std::int64_t ssize() const { return static_cast<std::int64_t>(c_.size()); }

    void set_storage(std::vector<FieldElement> v) {
        detail::track_release(ssize());
        c_ = std::move(v);
        detail::track_acquire(ssize());
    }
    void resize_storage(std::int64_t n) {
        detail::track_release(ssize());
        c_.resize(static_cast<std::size_t>(n), FieldElement::zero(f_));
        detail::track_acquire(ssize());
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) {
            c_.pop_back();
            detail::track_release(1);
        }
    }

    friend SkewPoly right_mod(SkewPoly a, const SkewPoly& c);
    friend std::pair<SkewPoly, SkewPoly> right_divmod(const SkewPoly& a, const SkewPoly& c);
    friend std::pair<SkewPoly, SkewPoly> left_divmod(const SkewPoly& a, const SkewPoly& c);

    FieldRef f_;
    std::vector<FieldElement> c_;
};

// Right division: a = q*c + r with deg r < deg c (q is the left cofactor).
inline std::pair<SkewPoly, SkewPoly> right_divmod(const SkewPoly& a, const SkewPoly& c) {
    if (c.is_zero()) throw std::invalid_argument("division by zero polynomial");
    a.check_field(c);
    SkewPoly r = a;
    const std::int64_t dc = c.degree().get();
    SkewPoly q(a.field());
    if (r.ssize() > dc) q.resize_storage(r.ssize() - dc);
    const FieldElement lc_inv = c.leading_coeff().inv();
    while (r.degree() >= dc) {
        const std::int64_t beta = r.degree().get() - dc;
        // leading term of (t x^beta) c is t theta^beta(lc(c)) x^{deg r}
        const FieldElement t = r.leading_coeff() * lc_inv.frobenius(beta);
        q.c_[static_cast<std::size_t>(beta)] = t;
        r.sub_mul_monomial_left(t, beta, c);
    }
    q.trim();
    return {std::move(q), std::move(r)};
}

// Remainder-only variant; reduces in place without storing the cofactor.
inline SkewPoly right_mod(SkewPoly a, const SkewPoly& c) {
    if (c.is_zero()) throw std::invalid_argument("division by zero polynomial");
    a.check_field(c);
    const std::int64_t dc = c.degree().get();
    if (a.degree() < dc) return a;
    const FieldElement lc_inv = c.leading_coeff().inv();
    while (a.degree() >= dc) {
        const std::int64_t beta = a.degree().get() - dc;
        const FieldElement t = a.leading_coeff() * lc_inv.frobenius(beta);
        a.sub_mul_monomial_left(t, beta, c);
    }
    return a;
}

// Left division: a = c*q + r with deg r < deg c.
inline std::pair<SkewPoly, SkewPoly> left_divmod(const SkewPoly& a, const SkewPoly& c) {
    if (c.is_zero()) throw std::invalid_argument("division by zero polynomial");
    a.check_field(c);
    SkewPoly r = a;
    const std::int64_t dc = c.degree().get();
    SkewPoly q(a.field());
    if (r.ssize() > dc) q.resize_storage(r.ssize() - dc);
    const FieldElement lc_inv = c.leading_coeff().inv();
    while (r.degree() >= dc) {
        const std::int64_t d = r.degree().get() - dc;
        // leading term of c (t x^d) is lc(c) theta^{dc}(t) x^{deg r}
        const FieldElement t = (lc_inv * r.leading_coeff()).frobenius(-dc);
        q.c_[static_cast<std::size_t>(d)] = t;
        // r -= c * (t x^d)
        for (std::int64_t j = 0; j <= dc; ++j) {
            const FieldElement cj = c.coeff(j);
            if (cj.is_zero()) continue;
            auto& dst = r.c_[static_cast<std::size_t>(j + d)];
            dst = dst - cj * t.frobenius(j);
        }
        r.trim();
    }
    q.trim();
    return {std::move(q), std::move(r)};
}

// Single coefficient of the plain product a*b: sum_i a_i theta^i(b_{d-i}).
inline FieldElement product_coeff(const SkewPoly& a, const SkewPoly& b, std::int64_t d) {
    FieldElement acc = FieldElement::zero(a.field());
    const std::int64_t lo = std::max<std::int64_t>(0, d - (b.size() - 1));
    const std::int64_t hi = std::min<std::int64_t>(a.size() - 1, d);
    for (std::int64_t i = lo; i <= hi; ++i) {
        const FieldElement ai = a.coeff(i);
        if (ai.is_zero()) continue;
        const FieldElement bj = b.coeff(d - i);
        if (bj.is_zero()) continue;
        acc = acc + ai * bj.frobenius(i);
    }
    return acc;
}

namespace detail {

// Lazy right-reduction of the product lambda*s mod g: reconstructs single
// coefficients of the long-division state without materialising the product.
// Correct for any g; cheap when g has few terms below its head.
class LazyProductMod {
  public:
    LazyProductMod(const SkewPoly& lambda, const SkewPoly& s, const SkewPoly& g)
        : lambda_(lambda), s_(s), g_(g), deg_g_(g.degree().get()) {
        deg_prod_ = lambda.degree().get() + s.degree().get();
        lc_inv_ = g.leading_coeff().inv();
        for (std::int64_t i : g.support())
            if (i != deg_g_) low_support_.push_back(i);
    }

    // coefficient at degree d of the fully reduced remainder (d < deg g)
    FieldElement remainder_coeff(std::int64_t d) { return current(d); }

  private:
    // coefficient at degree d just before the division step that clears d
    FieldElement current(std::int64_t d) {
        FieldElement acc = product_coeff(lambda_, s_, d);
        for (std::int64_t i : low_support_) {
            const std::int64_t above = d + deg_g_ - i;  // step that feeds degree d
            if (above < deg_g_ || above > deg_prod_) continue;
            acc = acc - step_scale(above) * g_.coeff(i).frobenius(above - deg_g_);
        }
        return acc;
    }

    // multiplier t of the division step at degree d (subtracting t x^{d-deg g} g)
    const FieldElement& step_scale(std::int64_t d) {
        auto it = scales_.find(d);
        if (it == scales_.end()) {
            FieldElement t = current(d) * lc_inv_.frobenius(d - deg_g_);
            it = scales_.emplace(d, std::move(t)).first;
        }
        return it->second;
    }

    const SkewPoly& lambda_;
    const SkewPoly& s_;
    const SkewPoly& g_;
    std::int64_t deg_g_;
    std::int64_t deg_prod_;
    FieldElement lc_inv_;
    std::vector<std::int64_t> low_support_;
    std::map<std::int64_t, FieldElement> scales_;
};

}  // namespace detail

// Coefficient of x^eta in (lambda * s mod g), 0 <= eta < deg g.
//
// When deg2(g) < deg(g)/2 the reduction touching degree eta involves at most
// #supp(g)+1 coefficients of the plain product, each obtained by a single
// O(deg) convolution; otherwise the full product is formed and reduced. Both
// paths return identical values.
inline FieldElement coeff_of_product_mod(const SkewPoly& lambda, const SkewPoly& s,
                                         const SkewPoly& g, std::int64_t eta) {
    if (g.is_zero()) throw std::invalid_argument("division by zero polynomial");
    const std::int64_t dg = g.degree().get();
    if (eta < 0 || eta >= dg) throw std::invalid_argument("coefficient index out of range");
    if (lambda.is_zero() || s.is_zero()) return FieldElement::zero(g.field());

    const Degree d2 = g.deg2();
    const bool sparse = !d2.is_finite() || 2 * d2.get() < dg;
    if (!sparse) {
        const SkewPoly rem = right_mod(lambda * s, g);
        return rem.coeff(eta);
    }
    if (lambda.degree().get() + s.degree().get() < dg)  // nothing to reduce
        return product_coeff(lambda, s, eta);
    detail::LazyProductMod lazy(lambda, s, g);
    return lazy.remainder_coeff(eta);
}

}  // namespace skewmin
