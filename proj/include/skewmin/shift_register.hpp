#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "skewmin/counters.hpp"
#include "skewmin/skew_matrix.hpp"
#include "skewmin/skew_poly.hpp"

namespace skewmin {

// Problem instance: find lambda of minimal degree with
//   lambda s_i = omega_i  (mod g_i)      for i = 1..ell
//   deg omega_i + gamma_i < deg lambda + gamma_0.
// The s_i are reduced mod g_i once, at construction; this does not change
// the solution set.
class ShiftRegisterProblem {
  public:
    ShiftRegisterProblem(FieldRef field, std::vector<SkewPoly> s, std::vector<SkewPoly> g,
                         std::vector<std::int64_t> gamma)
        : f_(std::move(field)), s_(std::move(s)), g_(std::move(g)), gamma_(std::move(gamma)) {
        if (s_.empty() || s_.size() != g_.size())
            throw std::invalid_argument("need ell >= 1 sequences with matching moduli");
        if (gamma_.size() != s_.size() + 1)
            throw std::invalid_argument("need ell+1 weights");
        for (auto w : gamma_)
            if (w < 0) throw std::invalid_argument("weights must be non-negative");
        for (std::size_t i = 0; i < s_.size(); ++i) {
            if (g_[i].is_zero()) throw std::invalid_argument("zero modulus");
            s_[i] = right_mod(std::move(s_[i]), g_[i]);
        }
    }

    std::int64_t ell() const { return static_cast<std::int64_t>(s_.size()); }
    const FieldRef& field() const { return f_; }
    const SkewPoly& s(std::size_t i) const { return s_.at(i - 1); }  // 1-based, as written
    const SkewPoly& g(std::size_t i) const { return g_.at(i - 1); }
    std::int64_t gamma(std::size_t i) const { return gamma_.at(i); }
    const std::vector<SkewPoly>& s_all() const { return s_; }
    const std::vector<SkewPoly>& g_all() const { return g_; }
    const std::vector<std::int64_t>& gamma_all() const { return gamma_; }

    // mu = max_i { gamma_i + deg g_i }, the size parameter of the instance
    std::int64_t mu() const {
        std::int64_t mu = 0;
        for (std::size_t i = 0; i < g_.size(); ++i)
            mu = std::max(mu, gamma_[i + 1] + g_[i].degree().get());
        return mu;
    }

  private:
    FieldRef f_;
    std::vector<SkewPoly> s_, g_;
    std::vector<std::int64_t> gamma_;
};

enum class Engine { MS, DD };

inline const char* engine_name(Engine e) { return e == Engine::MS ? "MS" : "DD"; }

struct SolveCounters {
    OpCounter ops;
    std::uint64_t transforms = 0;       // simple transformations / row updates
    std::uint64_t loop_iterations = 0;  // demand-driven while-loop passes
    std::int64_t peak_coeffs = 0;       // demand-driven peak live coefficients

    std::uint64_t field_ops() const { return ops.total(); }
};

struct SrSolution {
    SkewPoly lambda;
    std::vector<SkewPoly> omega;
    std::int64_t deg_lambda = 0;
    Engine engine = Engine::MS;
    SolveCounters counters;
    TransformLog transform_log;
};

// Basis matrix of the solution module of the congruences: first row
// (1, s_1, ..., s_ell), then g_i on the diagonal.
inline SkewMatrix build_basis(const ShiftRegisterProblem& P) {
    const auto& f = P.field();
    const std::size_t n = static_cast<std::size_t>(P.ell()) + 1;
    std::vector<SkewVector> rows;
    rows.reserve(n);
    SkewVector first;
    first.push_back(SkewPoly::one(f));
    for (std::size_t i = 1; i < n; ++i) first.push_back(P.s(i));
    rows.push_back(std::move(first));
    for (std::size_t i = 1; i < n; ++i) {
        SkewVector r(n, SkewPoly::zero(f));
        r[i] = P.g(i);
        rows.push_back(std::move(r));
    }
    return SkewMatrix(std::move(rows));
}

// Column j multiplied by x^{gamma_j} on the right.
inline SkewMatrix apply_weights(const SkewMatrix& V, const std::vector<std::int64_t>& gamma) {
    if (gamma.size() != V.n_cols()) throw std::invalid_argument("weight count != column count");
    std::vector<SkewVector> rows;
    rows.reserve(V.n_rows());
    for (std::size_t i = 0; i < V.n_rows(); ++i) {
        SkewVector r;
        r.reserve(V.n_cols());
        for (std::size_t j = 0; j < V.n_cols(); ++j)
            r.push_back(V.at(i, j).shifted_right(gamma[j]));
        rows.push_back(std::move(r));
    }
    return SkewMatrix(std::move(rows));
}

namespace detail {

inline SkewPoly make_monic(const SkewPoly& lambda) {
    const FieldElement lc = lambda.leading_coeff();
    if (lc == FieldElement::one(lambda.field())) return lambda;
    return lambda.scaled_left(lc.inv());
}

inline std::vector<SkewPoly> recompute_omega(const ShiftRegisterProblem& P,
                                             const SkewPoly& lambda) {
    std::vector<SkewPoly> omega;
    omega.reserve(static_cast<std::size_t>(P.ell()));
    for (std::size_t i = 1; i <= static_cast<std::size_t>(P.ell()); ++i)
        omega.push_back(right_mod(lambda * P.s(i), P.g(i)));
    return omega;
}

inline SrSolution trivial_solution(const ShiftRegisterProblem& P, Engine e) {
    SrSolution sol;
    sol.lambda = SkewPoly::one(P.field());
    sol.omega = P.s_all();  // already reduced mod g_i
    sol.deg_lambda = 0;
    sol.engine = e;
    return sol;
}

}  // namespace detail

// Pick the weak Popov row with leading position 0, undo the column weights
// and normalise. A full-rank square weak Popov matrix has exactly one such
// row (its leading positions form a permutation).
inline SrSolution extract_solution(const SkewMatrix& W, const ShiftRegisterProblem& P) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < W.n_rows(); ++i) {
        if (vec_is_zero(W.row(i))) continue;
        if (leading_position(W.row(i)) == 0) {
            if (hit) throw std::runtime_error("internal: weak Popov permutation violated");
            hit = i;
        }
    }
    if (!hit) throw std::runtime_error("internal: weak Popov permutation violated");
    const SkewVector& row = W.row(*hit);
    SkewVector unweighted;
    unweighted.reserve(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
        auto e = row[j].unshifted_right(P.gamma(j));
        if (!e) throw std::runtime_error("internal: weighted row not divisible by x^gamma");
        unweighted.push_back(std::move(*e));
    }
    SrSolution sol;
    sol.lambda = detail::make_monic(unweighted[0]);
    sol.omega = detail::recompute_omega(P, sol.lambda);
    sol.deg_lambda = sol.lambda.degree().get();
    return sol;
}

// Mulders-Storjohann engine: reduce the weighted basis to weak Popov form and
// read the solution off the leading-position-0 row.
inline SrSolution solve_ms(const ShiftRegisterProblem& P) {
    OpCounter ops;
    CounterScope scope(ops);
    if (P.gamma(0) >= P.mu()) {  // (1, s_1, ..., s_ell) is already minimal
        SrSolution sol = detail::trivial_solution(P, Engine::MS);
        sol.counters.ops = ops;
        return sol;
    }
    const SkewMatrix weighted = apply_weights(build_basis(P), P.gamma_all());
    auto [reduced, log] = mulders_storjohann(weighted);
    SrSolution sol = extract_solution(reduced, P);
    sol.engine = Engine::MS;
    sol.transform_log = std::move(log);
    sol.counters.transforms = sol.transform_log.count;
    sol.counters.ops = ops;
    return sol;
}

// Demand-driven engine: works on the first column only, computing matrix
// coefficients on demand. State is ell+1 column entries plus the weighted
// inputs; peak coefficient storage is recorded in the counters.
inline SrSolution solve_dd(const ShiftRegisterProblem& P) {
    OpCounter ops;
    CounterScope scope(ops);
    if (P.gamma(0) >= P.mu()) {
        SrSolution sol = detail::trivial_solution(P, Engine::DD);
        sol.counters.ops = ops;
        return sol;
    }
    const auto& f = P.field();
    const std::size_t ell = static_cast<std::size_t>(P.ell());

    SkewPoly lambda = SkewPoly::zero(f);
    std::uint64_t transforms = 0, iterations = 0;
    CoeffTracker tracker;
    bool trivial = false;
    {
        TrackerScope tscope(tracker);
        // weighted inputs
        std::vector<SkewPoly> st, gt;
        st.reserve(ell);
        gt.reserve(ell);
        for (std::size_t j = 1; j <= ell; ++j) {
            st.push_back(P.s(j).shifted_right(P.gamma(j)));
            gt.push_back(P.g(j).shifted_right(P.gamma(j)));
        }
        // (eta, h) = (deg, LP) of (x^{gamma_0}, st_1, ..., st_ell)
        std::int64_t eta = P.gamma(0);
        std::size_t h = 0;
        for (std::size_t j = 1; j <= ell; ++j) {
            const Degree d = st[j - 1].degree();
            if (d >= eta) {
                eta = d.get();
                h = j;
            }
        }
        if (h == 0) {
            trivial = true;
        } else {
            // first-column entries and per-row cached leading (coeff, degree)
            std::vector<SkewPoly> col;
            col.reserve(ell + 1);
            col.push_back(SkewPoly::x_pow(f, P.gamma(0)));
            for (std::size_t j = 0; j < ell; ++j) col.push_back(SkewPoly::zero(f));
            std::vector<FieldElement> lead_coeff(ell + 1, FieldElement::zero(f));
            std::vector<std::int64_t> lead_deg(ell + 1, 0);
            for (std::size_t j = 1; j <= ell; ++j) {
                lead_coeff[j] = gt[j - 1].leading_coeff();
                lead_deg[j] = gt[j - 1].degree().get();
            }

            while (col[0].degree() <= eta) {
                ++iterations;
                // Coefficient of x^eta in row 0's entry h. The entry equals
                // (a s~_h mod g~_h) where a is col_0 with its x^{gamma_0}
                // factor removed; col_0 itself would smuggle a theta^{gamma_0}
                // twist past the coefficients of s~_h. Above deg g~_h the
                // remainder has no coefficient at all.
                FieldElement alpha = FieldElement::zero(f);
                if (eta < gt[h - 1].degree().get()) {
                    auto cofactor = col[0].unshifted_right(P.gamma(0));
                    if (!cofactor)
                        throw std::runtime_error("internal: first column not divisible by x^gamma_0");
                    alpha = coeff_of_product_mod(*cofactor, st[h - 1], gt[h - 1], eta);
                }
                if (!alpha.is_zero()) {
                    if (eta < lead_deg[h]) {
                        std::swap(col[0], col[h]);
                        std::swap(alpha, lead_coeff[h]);
                        std::swap(eta, lead_deg[h]);
                    }
                    ++transforms;
                    const std::int64_t delta = eta - lead_deg[h];
                    const FieldElement scale = alpha * lead_coeff[h].frobenius(delta).inv();
                    col[0].sub_mul_monomial_left(scale, delta, col[h]);
                    if (col[0].is_zero()) throw std::runtime_error("internal: solver row vanished");
                }
                if (h > 1)
                    --h;
                else {
                    --eta;
                    h = ell;
                }
            }

            for (std::size_t j = 0; j <= ell; ++j)
                if (!col[j].is_zero() && !col[j].unshifted_right(P.gamma(0)))
                    throw std::runtime_error("internal: first column not divisible by x^gamma_0");
            lambda = *col[0].unshifted_right(P.gamma(0));
        }
    }

    SrSolution sol;
    if (trivial) {
        sol = detail::trivial_solution(P, Engine::DD);
    } else {
        sol.lambda = detail::make_monic(lambda);
        sol.omega = detail::recompute_omega(P, sol.lambda);
        sol.deg_lambda = sol.lambda.degree().get();
        sol.engine = Engine::DD;
    }
    sol.counters.transforms = transforms;
    sol.counters.loop_iterations = iterations;
    sol.counters.peak_coeffs = tracker.peak;
    sol.counters.ops = ops;
    return sol;
}

inline SrSolution solve(const ShiftRegisterProblem& P, Engine e) {
    return e == Engine::MS ? solve_ms(P) : solve_dd(P);
}

// Check the congruences and the weighted degree constraint.
inline bool verify_solution(const ShiftRegisterProblem& P, const SrSolution& sol) {
    if (sol.lambda.is_zero()) return false;
    if (sol.omega.size() != static_cast<std::size_t>(P.ell())) return false;
    const Degree bound = sol.lambda.degree() + P.gamma(0);
    for (std::size_t i = 1; i <= static_cast<std::size_t>(P.ell()); ++i) {
        const SkewPoly& w = sol.omega[i - 1];
        if (!right_mod(sol.lambda * P.s(i) - w, P.g(i)).is_zero()) return false;
        if (!(w.degree() + P.gamma(i) < bound)) return false;
    }
    return true;
}

struct OracleResult {
    bool found = false;
    std::int64_t deg = -1;
    std::optional<SkewPoly> lambda;
    std::vector<SkewPoly> omega;
    bool unique = false;  // exactly one monic lambda of minimal degree
};

// Exhaustive ground truth: enumerate monic lambda by increasing degree and
// return the least degree admitting a solution, with a witness. Enumeration
// is aborted once the candidate count passes `budget`.
inline OracleResult oracle_min_degree(const ShiftRegisterProblem& P, std::int64_t degree_cap,
                                      std::uint64_t budget = 10'000'000) {
    const auto& f = P.field();
    const std::uint64_t q = f->order();
    const std::int64_t ell = P.ell();
    std::uint64_t spent = 0;
    OracleResult res;
    for (std::int64_t d = 0; d <= degree_cap; ++d) {
        std::uint64_t level = 1;
        for (std::int64_t i = 0; i < d; ++i) {
            if (level > budget / q) throw std::runtime_error("oracle enumeration budget exceeded");
            level *= q;
        }
        spent += level;
        if (spent > budget) throw std::runtime_error("oracle enumeration budget exceeded");
        std::uint64_t hits = 0;
        for (std::uint64_t idx = 0; idx < level; ++idx) {
            std::vector<FieldElement> coeffs;
            coeffs.reserve(static_cast<std::size_t>(d) + 1);
            std::uint64_t t = idx;
            for (std::int64_t i = 0; i < d; ++i) {
                coeffs.push_back(FieldElement::from_uint(f, t % q));
                t /= q;
            }
            coeffs.push_back(FieldElement::one(f));
            SkewPoly lambda(f, std::move(coeffs));
            std::vector<SkewPoly> omega;
            bool ok = true;
            for (std::int64_t i = 1; i <= ell && ok; ++i) {
                SkewPoly w = right_mod(lambda * P.s(static_cast<std::size_t>(i)),
                                       P.g(static_cast<std::size_t>(i)));
                if (!(w.degree() + P.gamma(static_cast<std::size_t>(i)) <
                      Degree(d + P.gamma(0))))
                    ok = false;
                else
                    omega.push_back(std::move(w));
            }
            if (!ok) continue;
            ++hits;
            if (!res.found) {
                res.found = true;
                res.deg = d;
                res.lambda = std::move(lambda);
                res.omega = std::move(omega);
            }
        }
        if (res.found) {
            res.unique = (hits == 1);
            return res;
        }
    }
    return res;
}

}  // namespace skewmin
