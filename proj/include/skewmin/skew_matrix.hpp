#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skewmin/degree.hpp"
#include "skewmin/skew_poly.hpp"

namespace skewmin {

using SkewVector = std::vector<SkewPoly>;

inline bool vec_is_zero(const SkewVector& v) {
    for (const auto& e : v)
        if (!e.is_zero()) return false;
    return true;
}

// max over entries; -inf for the zero vector
inline Degree vec_degree(const SkewVector& v) {
    Degree d = Degree::minus_infinity();
    for (const auto& e : v)
        if (e.degree() > d) d = e.degree();
    return d;
}

// largest index attaining the vector degree
inline std::size_t leading_position(const SkewVector& v) {
    const Degree d = vec_degree(v);
    if (!d.is_finite()) throw std::invalid_argument("leading position of zero vector");
    for (std::size_t i = v.size(); i-- > 0;)
        if (v[i].degree() == d) return i;
    throw std::logic_error("unreachable");
}

// V(v) = n*deg(v) + LP(v) + 1 with n the vector length; V(0) = 0.
// Strictly decreases under simple transformations.
inline std::int64_t vector_value(const SkewVector& v) {
    if (vec_is_zero(v)) return 0;
    return static_cast<std::int64_t>(v.size()) * vec_degree(v).get() +
           static_cast<std::int64_t>(leading_position(v)) + 1;
}

// Rectangular matrix of skew polynomials over a common field.
class SkewMatrix {
  public:
    explicit SkewMatrix(std::vector<SkewVector> rows) : rows_(std::move(rows)) {
        if (rows_.empty() || rows_[0].empty()) throw std::invalid_argument("empty matrix");
        f_ = rows_[0][0].field();
        for (const auto& r : rows_) {
            if (r.size() != rows_[0].size()) throw std::invalid_argument("ragged matrix");
            for (const auto& e : r)
                if (!(e.field() == f_ || e.field()->same(*f_)))
                    throw std::invalid_argument("field mismatch");
        }
    }

    std::size_t n_rows() const { return rows_.size(); }
    std::size_t n_cols() const { return rows_[0].size(); }
    bool is_square() const { return n_rows() == n_cols(); }
    const FieldRef& field() const { return f_; }

    const SkewVector& row(std::size_t i) const { return rows_.at(i); }
    SkewVector& row(std::size_t i) { return rows_.at(i); }
    const SkewPoly& at(std::size_t i, std::size_t j) const { return rows_.at(i).at(j); }
    const std::vector<SkewVector>& rows() const { return rows_; }

  private:
    FieldRef f_;
    std::vector<SkewVector> rows_;
};

struct TransformRecord {
    std::size_t row;  // the replaced row
    std::int64_t value_before;
    std::int64_t value_after;
};

struct TransformLog {
    std::uint64_t count = 0;
    std::vector<TransformRecord> value_trace;
};

inline bool is_weak_popov(const SkewMatrix& V) {
    std::vector<bool> seen(V.n_cols(), false);
    for (std::size_t i = 0; i < V.n_rows(); ++i) {
        if (vec_is_zero(V.row(i))) continue;
        const std::size_t lp = leading_position(V.row(i));
        if (seen[lp]) return false;
        seen[lp] = true;
    }
    return true;
}

// Replace row j by row_j - alpha x^beta row_i, cancelling the leading term of
// LT(row_j). Requires LP(row_i) = LP(row_j) and deg row_i <= deg row_j.
inline void simple_transform(SkewMatrix& V, std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("not a simple transformation: identical rows");
    if (vec_is_zero(V.row(i)) || vec_is_zero(V.row(j)))
        throw std::invalid_argument("not a simple transformation: zero row");
    const std::size_t lp = leading_position(V.row(i));
    if (lp != leading_position(V.row(j)))
        throw std::invalid_argument("not a simple transformation: leading positions differ");
    const Degree di = vec_degree(V.row(i));
    const Degree dj = vec_degree(V.row(j));
    if (di > dj) throw std::invalid_argument("not a simple transformation: pivot degree too large");
    const std::int64_t beta = dj.get() - di.get();
    const FieldElement alpha =
        V.row(j)[lp].leading_coeff() * V.row(i)[lp].leading_coeff().inv().frobenius(beta);
    for (std::size_t col = 0; col < V.n_cols(); ++col)
        V.row(j)[col].sub_mul_monomial_left(alpha, beta, V.row(i)[col]);
}

// Mulders-Storjohann: apply simple transformations until none is possible.
// Deterministic order: scan rows by increasing index for a leading-position
// collision; within a pair the lower-degree row is the pivot, ties broken by
// lower index. Returns the reduced matrix (same row span, weak Popov form)
// and a log with one record per transformation.
inline std::pair<SkewMatrix, TransformLog> mulders_storjohann(const SkewMatrix& V) {
    SkewMatrix W = V;
    TransformLog log;
    const std::size_t n = W.n_rows();
    for (;;) {
        bool transformed = false;
        for (std::size_t j = 0; j < n && !transformed; ++j) {
            if (vec_is_zero(W.row(j))) continue;
            const std::size_t lpj = leading_position(W.row(j));
            for (std::size_t i = 0; i < j; ++i) {
                if (vec_is_zero(W.row(i))) continue;
                if (leading_position(W.row(i)) != lpj) continue;
                std::size_t pivot = i, target = j;
                if (vec_degree(W.row(i)) > vec_degree(W.row(j))) std::swap(pivot, target);
                const std::int64_t before = vector_value(W.row(target));
                simple_transform(W, pivot, target);
                log.value_trace.push_back({target, before, vector_value(W.row(target))});
                ++log.count;
                transformed = true;
                break;
            }
        }
        if (!transformed) break;
    }
    return {std::move(W), std::move(log)};
}

// Degree of the (Dieudonne) determinant of a triangular matrix: the sum of
// the diagonal degrees.
inline std::int64_t det_degree_triangular(const SkewMatrix& V) {
    if (!V.is_square()) throw std::invalid_argument("matrix not square");
    const std::size_t n = V.n_rows();
    bool upper = true, lower = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i > j && !V.at(i, j).is_zero()) upper = false;
            if (i < j && !V.at(i, j).is_zero()) lower = false;
        }
    if (!upper && !lower) throw std::invalid_argument("matrix not triangular");
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (V.at(i, i).is_zero()) throw std::invalid_argument("singular triangular matrix");
        sum += V.at(i, i).degree().get();
    }
    return sum;
}

// OD(V) = deg V - deg det V, with deg V the sum of the row degrees. The
// caller supplies the determinant degree (triangular read-off, preserved by
// row operations). Zero exactly for full-rank weak Popov matrices.
inline std::int64_t orthogonality_defect(const SkewMatrix& V, std::int64_t det_degree) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < V.n_rows(); ++i) {
        const Degree d = vec_degree(V.row(i));
        if (!d.is_finite()) throw std::invalid_argument("matrix has a zero row");
        sum += d.get();
    }
    return sum - det_degree;
}

}  // namespace skewmin
