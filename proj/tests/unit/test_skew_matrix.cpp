#include <catch2/catch_amalgamated.hpp>

#include "skewmin/rng.hpp"
#include "skewmin/shift_register.hpp"
#include "skewmin/skew_matrix.hpp"
#include "test_util.hpp"

using namespace skewmin;
using testutil::el;
using testutil::poly;

namespace {

SkewMatrix mat(const FieldRef& f, const std::vector<std::vector<std::vector<std::uint64_t>>>& rows) {
    std::vector<SkewVector> r;
    for (const auto& row : rows) {
        SkewVector v;
        for (const auto& entry : row) v.push_back(poly(f, entry));
        r.push_back(std::move(v));
    }
    return SkewMatrix(std::move(r));
}

}  // namespace

TEST_CASE("vector degree, leading position, value") {
    auto f = testutil::f4();
    SkewVector zero{SkewPoly::zero(f), SkewPoly::zero(f)};
    CHECK(!vec_degree(zero).is_finite());
    CHECK_THROWS_AS(leading_position(zero), std::invalid_argument);
    CHECK(vector_value(zero) == 0);

    SkewVector v1{SkewPoly::one(f), SkewPoly::x_pow(f, 2)};
    CHECK(vec_degree(v1) == 2);
    CHECK(leading_position(v1) == 1);
    CHECK(vector_value(v1) == 2 * 2 + 1 + 1);  // 6

    SkewVector v2{SkewPoly::x_pow(f, 2), SkewPoly::one(f)};
    CHECK(leading_position(v2) == 0);
    CHECK(vector_value(v2) == 2 * 2 + 0 + 1);  // 5

    // ties break to the rightmost position
    SkewVector v3{SkewPoly::x_pow(f, 1), SkewPoly::x_pow(f, 1)};
    CHECK(vec_degree(v3) == 1);
    CHECK(leading_position(v3) == 1);
}

TEST_CASE("weak Popov recognition") {
    auto f = testutil::f4();
    CHECK(is_weak_popov(mat(f, {{{1}, {}}, {{}, {1}}})));
    CHECK(!is_weak_popov(mat(f, {{{1}, {0, 1}}, {{}, {0, 0, 1}}})));  // both LP 1
    CHECK(is_weak_popov(mat(f, {{{0, 0, 1}, {1}}, {{}, {0, 0, 0, 1}}})));
}

TEST_CASE("simple transformation: worked example") {
    auto f = testutil::f4();
    // [[1, x], [0, x^2]]: both rows lead at position 1
    auto V = mat(f, {{{1}, {0, 1}}, {{}, {0, 0, 1}}});
    const auto before = vector_value(V.row(1));
    simple_transform(V, 0, 1);
    // row1 <- (0, x^2) - x (1, x) = (x, 0) over F_2
    CHECK(V.at(1, 0) == SkewPoly::x_pow(f, 1));
    CHECK(V.at(1, 1).is_zero());
    CHECK(vector_value(V.row(1)) < before);
    CHECK(is_weak_popov(V));
}

TEST_CASE("simple transformation with equal degrees cancels at the same degree") {
    auto f = testutil::f4();
    auto V = mat(f, {{{0, 2}, {0, 1}}, {{1, 3}, {0, 2}}});  // both deg 1, LP 1
    REQUIRE(leading_position(V.row(0)) == 1);
    REQUIRE(leading_position(V.row(1)) == 1);
    const auto before = vector_value(V.row(1));
    simple_transform(V, 0, 1);
    CHECK(vector_value(V.row(1)) < before);
}

TEST_CASE("simple transformation rejects invalid pairs") {
    auto f = testutil::f4();
    auto V = mat(f, {{{0, 0, 1}, {1}}, {{}, {0, 1}}});  // LP 0 and LP 1
    CHECK_THROWS_AS(simple_transform(V, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(simple_transform(V, 0, 0), std::invalid_argument);
    // degree order matters: pivot must not have larger degree
    auto W = mat(f, {{{}, {0, 0, 1}}, {{}, {0, 1}}});
    CHECK_THROWS_AS(simple_transform(W, 0, 1), std::invalid_argument);
    CHECK_NOTHROW(simple_transform(W, 1, 0));
}

TEST_CASE("value strictly decreases on random simple transformations") {
    auto f = testutil::f9();
    Rng rng(41);
    int applied = 0;
    while (applied < 200) {
        SkewVector a, b;
        for (int j = 0; j < 3; ++j) {
            a.push_back(random_poly_below(f, 4, rng));
            b.push_back(random_poly_below(f, 4, rng));
        }
        if (vec_is_zero(a) || vec_is_zero(b)) continue;
        if (leading_position(a) != leading_position(b)) continue;
        SkewMatrix V{std::vector<SkewVector>{a, b}};
        const std::size_t pivot = vec_degree(a) <= vec_degree(b) ? 0 : 1;
        const std::size_t target = 1 - pivot;
        const auto before = vector_value(V.row(target));
        simple_transform(V, pivot, target);
        CHECK(vector_value(V.row(target)) < before);
        ++applied;
    }
}

TEST_CASE("mulders_storjohann reduces to weak Popov form") {
    auto f = testutil::f4();

    SECTION("already reduced input is returned unchanged") {
        const auto V = mat(f, {{{0, 0, 1}, {1}}, {{}, {0, 0, 0, 1}}});
        auto [W, log] = mulders_storjohann(V);
        CHECK(log.count == 0);
        CHECK(W.rows() == V.rows());
    }

    SECTION("2x2 worked example") {
        const auto V = mat(f, {{{1}, {0, 1}}, {{}, {0, 0, 1}}});
        auto [W, log] = mulders_storjohann(V);
        CHECK(is_weak_popov(W));
        CHECK(log.count >= 1);
        for (const auto& rec : log.value_trace) CHECK(rec.value_after < rec.value_before);
    }

    SECTION("random matrices end in weak Popov form with decreasing values") {
        Rng rng(43);
        for (int it = 0; it < 60; ++it) {
            std::vector<SkewVector> rows;
            const int n = static_cast<int>(rng.range(2, 4));
            for (int i = 0; i < n; ++i) {
                SkewVector r;
                for (int j = 0; j < n; ++j) r.push_back(random_poly_below(f, 4, rng));
                if (vec_is_zero(r)) r[0] = SkewPoly::one(f);
                rows.push_back(std::move(r));
            }
            auto [W, log] = mulders_storjohann(SkewMatrix(std::move(rows)));
            CHECK(is_weak_popov(W));
            for (const auto& rec : log.value_trace) CHECK(rec.value_after < rec.value_before);
        }
    }
}

TEST_CASE("minimality of the reduced basis rows (exhaustive small module)") {
    // basis of the congruence module for ell=1, g = x^2, s = x over F_4
    auto f = testutil::f4();
    const auto V = mat(f, {{{1}, {0, 1}}, {{}, {0, 0, 1}}});
    auto [W, log] = mulders_storjohann(V);
    REQUIRE(is_weak_popov(W));

    // enumerate a*row0 + b*row1 over all polys of degree <= 2 and check no
    // module element beats the basis row with its leading position
    std::vector<SkewPoly> candidates;
    for (std::uint64_t n = 0; n < 4 * 4 * 4; ++n) {
        std::vector<FieldElement> c;
        std::uint64_t t = n;
        for (int i = 0; i < 3; ++i) {
            c.push_back(el(f, t % 4));
            t /= 4;
        }
        candidates.push_back(SkewPoly(f, std::move(c)));
    }
    for (const auto& a : candidates) {
        for (const auto& b : candidates) {
            SkewVector u;
            for (std::size_t j = 0; j < 2; ++j)
                u.push_back(a * V.at(0, j) + b * V.at(1, j));
            if (vec_is_zero(u)) continue;
            const std::size_t lp = leading_position(u);
            for (std::size_t i = 0; i < 2; ++i) {
                if (vec_is_zero(W.row(i)) || leading_position(W.row(i)) != lp) continue;
                CHECK(vec_degree(u) >= vec_degree(W.row(i)));
            }
        }
    }
}

TEST_CASE("determinant degree of triangular matrices") {
    auto f = testutil::f4();
    CHECK(det_degree_triangular(mat(f, {{{1}, {}}, {{}, {1}}})) == 0);
    CHECK(det_degree_triangular(mat(f, {{{0, 0, 1}, {}}, {{}, {0, 0, 0, 1}}})) == 5);
    // lower triangular works too
    CHECK(det_degree_triangular(mat(f, {{{0, 1}, {}}, {{1}, {0, 1}}})) == 2);
    CHECK_THROWS_AS(det_degree_triangular(mat(f, {{{1}, {1}}, {{1}, {1}}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(det_degree_triangular(mat(f, {{{}, {1}}, {{}, {1}}})),
                    std::invalid_argument);  // zero diagonal
}

TEST_CASE("orthogonality defect") {
    auto f = testutil::f4();
    // weighted basis for ell=1, gamma=(0,0), g=x^3, s=x^2: row degrees 2+3, detdeg 3
    const auto V = mat(f, {{{1}, {0, 0, 1}}, {{}, {0, 0, 0, 1}}});
    const auto detdeg = det_degree_triangular(V);
    CHECK(detdeg == 3);
    CHECK(orthogonality_defect(V, detdeg) == 2);

    // full-rank weak Popov matrix has defect zero
    auto [W, log] = mulders_storjohann(V);
    CHECK(orthogonality_defect(W, detdeg) == 0);

    const auto Z = mat(f, {{{}, {}}, {{}, {1}}});
    CHECK_THROWS_AS(orthogonality_defect(Z, 0), std::invalid_argument);
}

TEST_CASE("degree conservation through reduction") {
    auto f = testutil::f9();
    Rng rng(47);
    for (int it = 0; it < 40; ++it) {
        // random full-rank upper triangular 3x3
        std::vector<SkewVector> rows;
        for (int i = 0; i < 3; ++i) {
            SkewVector r;
            for (int j = 0; j < 3; ++j) {
                if (j < i)
                    r.push_back(SkewPoly::zero(f));
                else if (j == i)
                    r.push_back(random_poly_of_degree(f, rng.range(0, 3), rng));
                else
                    r.push_back(random_poly_below(f, 4, rng));
            }
            rows.push_back(std::move(r));
        }
        SkewMatrix V(std::move(rows));
        const auto detdeg = det_degree_triangular(V);
        auto [W, log] = mulders_storjohann(V);
        REQUIRE(is_weak_popov(W));
        CHECK(orthogonality_defect(W, detdeg) == 0);
    }
}
