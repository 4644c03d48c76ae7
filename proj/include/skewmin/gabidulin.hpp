#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skewmin/field.hpp"
#include "skewmin/rng.hpp"
#include "skewmin/shift_register.hpp"
#include "skewmin/skew_poly.hpp"

namespace skewmin {

// Evaluation of a skew polynomial as a linearized map: f(a) = sum_i f_i theta^i(a).
inline FieldElement lin_eval(const SkewPoly& f, const FieldElement& a) {
    FieldElement acc = FieldElement::zero(f.field());
    for (std::int64_t i = 0; i < f.size(); ++i) {
        const FieldElement c = f.coeff(i);
        if (c.is_zero()) continue;
        acc = acc + c * a.frobenius(i);
    }
    return acc;
}

namespace detail {

// Gaussian elimination over F; returns the rank, optionally back-solving
// A x = b when b is given (throws on singular systems in that case).
inline std::size_t gauss_solve(std::vector<std::vector<FieldElement>>& A,
                               std::vector<FieldElement>* b) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows == 0 ? 0 : A[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && A[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(A[pivot], A[rank]);
        if (b) std::swap((*b)[pivot], (*b)[rank]);
        const FieldElement inv = A[rank][col].inv();
        for (std::size_t j = col; j < cols; ++j) A[rank][j] = inv * A[rank][j];
        if (b) (*b)[rank] = inv * (*b)[rank];
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || A[r][col].is_zero()) continue;
            const FieldElement factor = A[r][col];
            for (std::size_t j = col; j < cols; ++j)
                A[r][j] = A[r][j] - factor * A[rank][j];
            if (b) (*b)[r] = (*b)[r] - factor * (*b)[rank];
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

// Monic skew polynomial of degree n vanishing (as a linearized map) on the
// span of the given points over the fixed field of theta.
inline SkewPoly annihilator(const FieldRef& f, const std::vector<FieldElement>& points) {
    SkewPoly g = SkewPoly::one(f);
    for (const auto& pt : points) {
        const FieldElement e = lin_eval(g, pt);
        if (e.is_zero()) throw std::invalid_argument("points not independent");
        // (x - theta(e) e^{-1}) g kills pt and keeps the previous kernel
        const FieldElement c = e.frobenius(1) * e.inv();
        SkewPoly shifted = g.mul_monomial_left(FieldElement::one(f), 1);  // x * g
        g = shifted - g.scaled_left(c);
    }
    return g;
}

// Unique R with deg R < n and R(points[j]) = values[j]: a Moore-matrix solve.
inline SkewPoly interpolate(const FieldRef& f, const std::vector<FieldElement>& points,
                            const std::vector<FieldElement>& values) {
    if (points.size() != values.size()) throw std::invalid_argument("length mismatch");
    const std::size_t n = points.size();
    std::vector<std::vector<FieldElement>> A(n);
    for (std::size_t j = 0; j < n; ++j) {
        A[j].reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            A[j].push_back(points[j].frobenius(static_cast<std::int64_t>(i)));
    }
    std::vector<FieldElement> b = values;
    if (detail::gauss_solve(A, &b) != n)
        throw std::invalid_argument("points not independent");
    return SkewPoly(f, std::move(b));
}

// Interleaved Gabidulin code: ell constituent codes of length n over a common
// point set, dimensions k_i.
class GabidulinCode {
  public:
    GabidulinCode(FieldRef field, std::vector<std::int64_t> dims,
                  std::vector<FieldElement> points)
        : f_(std::move(field)), k_(std::move(dims)), points_(std::move(points)) {
        if (k_.empty()) throw std::invalid_argument("need at least one constituent code");
        const std::int64_t n = static_cast<std::int64_t>(points_.size());
        if (n < 1 || n > f_->m())
            throw std::invalid_argument("code length must satisfy 1 <= n <= m");
        for (auto k : k_)
            if (k < 1 || k >= n) throw std::invalid_argument("dimension must satisfy 1 <= k < n");
        // independence over the fixed field <=> Moore matrix nonsingular
        std::vector<std::vector<FieldElement>> A(points_.size());
        for (std::size_t j = 0; j < points_.size(); ++j)
            for (std::size_t i = 0; i < points_.size(); ++i)
                A[j].push_back(points_[j].frobenius(static_cast<std::int64_t>(i)));
        if (detail::gauss_solve(A, nullptr) != points_.size())
            throw std::invalid_argument("points not independent");
    }

    const FieldRef& field() const { return f_; }
    std::int64_t n() const { return static_cast<std::int64_t>(points_.size()); }
    std::int64_t ell() const { return static_cast<std::int64_t>(k_.size()); }
    const std::vector<std::int64_t>& dims() const { return k_; }
    const std::vector<FieldElement>& points() const { return points_; }

    std::int64_t max_dim() const {
        std::int64_t k = 0;
        for (auto v : k_) k = std::max(k, v);
        return k;
    }
    // every error of rank up to this is decoded with certainty
    std::int64_t unique_radius() const { return (n() - max_dim()) / 2; }

  private:
    FieldRef f_;
    std::vector<std::int64_t> k_;
    std::vector<FieldElement> points_;
};

struct InterleavedWord {
    std::vector<std::vector<FieldElement>> rows;  // ell x n
};

inline InterleavedWord encode(const GabidulinCode& code,
                              const std::vector<std::vector<FieldElement>>& messages) {
    if (messages.size() != static_cast<std::size_t>(code.ell()))
        throw std::invalid_argument("message count != ell");
    InterleavedWord w;
    for (std::size_t i = 0; i < messages.size(); ++i) {
        if (messages[i].size() != static_cast<std::size_t>(code.dims()[i]))
            throw std::invalid_argument("message length != k_i");
        SkewPoly fi(code.field(), messages[i]);
        std::vector<FieldElement> row;
        row.reserve(static_cast<std::size_t>(code.n()));
        for (const auto& pt : code.points()) row.push_back(lin_eval(fi, pt));
        w.rows.push_back(std::move(row));
    }
    return w;
}

struct DecodeResult {
    bool success = false;
    std::vector<std::vector<FieldElement>> messages;
    std::int64_t lambda_degree = -1;  // rank of the corrected error on success
    SolveCounters counters;
};

// Error-only decoding via the annihilator key equation: interpolate each
// received row, then solve
//   lambda r_i = omega_i (mod G),  deg omega_i < deg lambda + k_i
// with G the annihilator of the evaluation points, by casting it as a
// shift-register instance with gamma_0 = max k_j, gamma_i = gamma_0 - k_i
// (which makes the weighted degree constraint read exactly as above).
// The messages come back by exact left division omega_i = lambda f_i.
inline DecodeResult decode(const GabidulinCode& code, const InterleavedWord& received) {
    const auto& f = code.field();
    if (received.rows.size() != static_cast<std::size_t>(code.ell()))
        throw std::invalid_argument("received word has wrong row count");
    for (const auto& r : received.rows)
        if (r.size() != static_cast<std::size_t>(code.n()))
            throw std::invalid_argument("received word has wrong length");

    const SkewPoly G = annihilator(f, code.points());
    std::vector<SkewPoly> s;
    std::vector<SkewPoly> g;
    for (const auto& row : received.rows) {
        s.push_back(interpolate(f, code.points(), row));
        g.push_back(G);
    }
    const std::int64_t gamma0 = code.max_dim();
    std::vector<std::int64_t> gamma{gamma0};
    for (auto k : code.dims()) gamma.push_back(gamma0 - k);

    ShiftRegisterProblem P(f, std::move(s), std::move(g), std::move(gamma));
    SrSolution sol = solve_dd(P);

    DecodeResult res;
    res.counters = sol.counters;
    res.lambda_degree = sol.deg_lambda;
    for (std::size_t i = 0; i < sol.omega.size(); ++i) {
        auto [q, r] = left_divmod(sol.omega[i], sol.lambda);
        if (!r.is_zero()) return res;  // error weight beyond capability
        if (!(q.degree() < code.dims()[i])) return res;
        std::vector<FieldElement> msg;
        msg.reserve(static_cast<std::size_t>(code.dims()[i]));
        for (std::int64_t j = 0; j < code.dims()[i]; ++j) msg.push_back(q.coeff(j));
        res.messages.push_back(std::move(msg));
    }
    res.success = true;
    return res;
}

// Basis of the fixed field of theta as an F_p-space: kernel of theta - id.
inline std::vector<FieldElement> fixed_field_basis(const FieldRef& f) {
    const std::uint32_t m = f->m();
    const std::uint32_t p = f->p();
    // columns: theta(z^i) - z^i in coordinates; kernel vectors give fixed elements
    std::vector<std::vector<std::uint32_t>> M(m, std::vector<std::uint32_t>(m, 0));
    for (std::uint32_t i = 0; i < m; ++i) {
        std::vector<std::uint32_t> unit(m, 0);
        unit[i] = 1;
        FieldElement zi(f, std::move(unit));
        const FieldElement diff = zi.frobenius(1) - zi;
        for (std::uint32_t r = 0; r < m; ++r) M[r][i] = diff.coeffs()[r];
    }
    // F_p Gaussian elimination, tracking pivot columns
    std::vector<std::int32_t> pivot_of_col(m, -1);
    std::size_t rank = 0;
    for (std::uint32_t col = 0; col < m && rank < m; ++col) {
        std::size_t piv = rank;
        while (piv < m && M[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(M[piv], M[rank]);
        const std::uint32_t inv = detail::fp_inv_scalar(M[rank][col], p);
        for (std::uint32_t j = 0; j < m; ++j)
            M[rank][j] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(M[rank][j]) * inv) % p);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == rank || M[r][col] == 0) continue;
            const std::uint64_t factor = M[r][col];
            for (std::uint32_t j = 0; j < m; ++j) {
                const std::uint64_t sub = (factor * M[rank][j]) % p;
                M[r][j] = static_cast<std::uint32_t>((M[r][j] + p - sub) % p);
            }
        }
        pivot_of_col[col] = static_cast<std::int32_t>(rank);
        ++rank;
    }
    std::vector<FieldElement> basis;
    for (std::uint32_t col = 0; col < m; ++col) {
        if (pivot_of_col[col] != -1) continue;  // pivot column, not free
        std::vector<std::uint32_t> v(m, 0);
        v[col] = 1;
        for (std::uint32_t c2 = 0; c2 < m; ++c2) {
            if (pivot_of_col[c2] == -1) continue;
            const std::uint32_t coeff = M[static_cast<std::size_t>(pivot_of_col[c2])][col];
            v[c2] = coeff == 0 ? 0 : p - coeff;
        }
        basis.push_back(FieldElement(f, std::move(v)));
    }
    if (basis.size() != f->fixed_degree())
        throw std::runtime_error("internal: fixed field dimension mismatch");
    return basis;
}

inline FieldElement random_fixed_element(const FieldRef& f,
                                         const std::vector<FieldElement>& basis, Rng& rng) {
    FieldElement acc = FieldElement::zero(f);
    for (const auto& b : basis) {
        const std::uint64_t c = rng.below(f->p());
        if (c != 0) acc = acc + FieldElement::from_uint(f, c) * b;
    }
    return acc;
}

// Dimension, over the fixed field of theta, of the span of the given values.
inline std::int64_t fixed_span_rank(const FieldRef& f, const std::vector<FieldElement>& values) {
    const std::uint32_t p = f->p();
    const std::uint32_t m = f->m();
    // close the set under fixed-field scaling, then row-reduce over F_p
    const auto basis = fixed_field_basis(f);
    std::vector<std::vector<std::uint32_t>> rows;
    for (const auto& v : values) {
        if (v.is_zero()) continue;
        for (const auto& b : basis) {
            const FieldElement scaled = b * v;
            if (!scaled.is_zero()) rows.push_back(scaled.coeffs());
        }
    }
    // F_p row reduction
    std::size_t rank = 0;
    for (std::uint32_t col = 0; col < m && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        const std::uint32_t inv = detail::fp_inv_scalar(rows[rank][col], p);
        for (std::uint32_t j = 0; j < m; ++j)
            rows[rank][j] =
                static_cast<std::uint32_t>((static_cast<std::uint64_t>(rows[rank][j]) * inv) % p);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const std::uint64_t factor = rows[r][col];
            for (std::uint32_t j = 0; j < m; ++j) {
                const std::uint64_t sub = (factor * rows[rank][j]) % p;
                rows[r][j] = static_cast<std::uint32_t>((rows[r][j] + p - sub) % p);
            }
        }
        ++rank;
    }
    const std::uint32_t d = f->fixed_degree();
    if (rank % d != 0) throw std::runtime_error("internal: span not a fixed-field space");
    return static_cast<std::int64_t>(rank / d);
}

// Random ell x n error of rank exactly t: all entries lie in a common
// t-dimensional fixed-field space span{u_1..u_t}, with the fixed-field
// coordinate matrix of full rank t, resampled until both conditions hold.
// Equivalently vec(E) = u B for a t x (ell n) fixed-field matrix B of rank t.
inline std::vector<std::vector<FieldElement>> random_rank_error(const FieldRef& f,
                                                                std::int64_t ell, std::int64_t n,
                                                                std::int64_t t, Rng& rng) {
    if (t < 0 || t > n) throw std::invalid_argument("rank out of range");
    std::vector<std::vector<FieldElement>> E(
        static_cast<std::size_t>(ell),
        std::vector<FieldElement>(static_cast<std::size_t>(n), FieldElement::zero(f)));
    if (t == 0) return E;
    const auto basis = fixed_field_basis(f);
    if (t > static_cast<std::int64_t>(f->m() / f->fixed_degree()))
        throw std::invalid_argument("rank exceeds fixed-field dimension of the field");

    // span directions, independent over the fixed field
    std::vector<FieldElement> u;
    do {
        u.clear();
        for (std::int64_t k = 0; k < t; ++k) u.push_back(random_element(f, rng));
    } while (fixed_span_rank(f, u) != t);

    // fixed-field coordinates, jointly of rank t
    std::vector<std::vector<FieldElement>> C;
    for (;;) {
        C.assign(static_cast<std::size_t>(t), {});
        for (auto& row : C)
            for (std::int64_t j = 0; j < ell * n; ++j)
                row.push_back(random_fixed_element(f, basis, rng));
        // rank over the fixed field of the coordinate matrix
        std::vector<std::vector<FieldElement>> work = C;
        if (detail::gauss_solve(work, nullptr) == static_cast<std::size_t>(t)) break;
    }

    for (std::int64_t i = 0; i < ell; ++i)
        for (std::int64_t j = 0; j < n; ++j) {
            FieldElement acc = FieldElement::zero(f);
            for (std::int64_t k = 0; k < t; ++k)
                acc = acc + u[static_cast<std::size_t>(k)] *
                                C[static_cast<std::size_t>(k)][static_cast<std::size_t>(i * n + j)];
            E[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
        }
    return E;
}

}  // namespace skewmin
