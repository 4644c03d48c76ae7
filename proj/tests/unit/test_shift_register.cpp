#include <catch2/catch_amalgamated.hpp>

#include "skewmin/generate.hpp"
#include "skewmin/rng.hpp"
#include "skewmin/shift_register.hpp"
#include "test_util.hpp"

using namespace skewmin;
using testutil::el;
using testutil::poly;

namespace {

ShiftRegisterProblem tiny_f4() {
    // ell=1, g = x^2, s = x, gamma = (0, 0) over F_4
    auto f = testutil::f4();
    return ShiftRegisterProblem(f, {SkewPoly::x_pow(f, 1)}, {SkewPoly::x_pow(f, 2)}, {0, 0});
}

GenParams small_params(std::uint64_t seed, InstanceShape shape = InstanceShape::Generic) {
    GenParams gp;
    gp.p = (seed % 3 == 0) ? 3 : 2;
    gp.m = 1 + seed % 3;
    gp.s = 1 + seed % gp.m;
    gp.ell = 1 + static_cast<std::int64_t>(seed % 3);
    gp.max_deg_g = 5;
    gp.max_gamma = 3;
    gp.shape = shape;
    gp.seed = seed;
    return gp;
}

}  // namespace

TEST_CASE("problem construction canonicalises and validates") {
    auto f = testutil::f4();
    // s is reduced mod g at construction
    ShiftRegisterProblem P(f, {poly(f, {1, 2, 3, 1})}, {SkewPoly::x_pow(f, 2)}, {0, 0});
    CHECK(P.s(1).degree() < P.g(1).degree());
    CHECK(P.mu() == 2);

    CHECK_THROWS_AS(ShiftRegisterProblem(f, {SkewPoly::x_pow(f, 1)}, {SkewPoly::zero(f)}, {0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ShiftRegisterProblem(f, {SkewPoly::x_pow(f, 1)}, {SkewPoly::x_pow(f, 2)}, {0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        ShiftRegisterProblem(f, {SkewPoly::x_pow(f, 1)}, {SkewPoly::x_pow(f, 2)}, {0, -1}),
        std::invalid_argument);
}

TEST_CASE("basis matrix has the documented shape") {
    auto f = testutil::f4();
    ShiftRegisterProblem P(f, {SkewPoly::x_pow(f, 1), poly(f, {2, 1})},
                           {SkewPoly::x_pow(f, 2), poly(f, {1, 0, 0, 1})}, {0, 0, 0});
    const auto M = build_basis(P);
    REQUIRE(M.n_rows() == 3);
    REQUIRE(M.n_cols() == 3);
    CHECK(M.at(0, 0) == SkewPoly::one(f));
    CHECK(M.at(0, 1) == P.s(1));
    CHECK(M.at(0, 2) == P.s(2));
    CHECK(M.at(1, 1) == P.g(1));
    CHECK(M.at(2, 2) == P.g(2));
    CHECK(M.at(1, 0).is_zero());
    CHECK(M.at(1, 2).is_zero());
    CHECK(M.at(2, 1).is_zero());
    CHECK(det_degree_triangular(M) == 2 + 3);

    // every row satisfies the congruences: row0 with omega_i = s_i, rows i with lambda = 0
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t i = 1; i <= 2; ++i) {
            const SkewPoly lhs = M.at(r, 0) * P.s(i) - M.at(r, i);
            CHECK(right_mod(lhs, P.g(i)).is_zero());
        }
    }
}

TEST_CASE("column weights") {
    auto f = testutil::f4();
    ShiftRegisterProblem P(f, {SkewPoly::x_pow(f, 1)}, {SkewPoly::x_pow(f, 2)}, {0, 0});
    const auto M = build_basis(P);

    CHECK(apply_weights(M, {0, 0}).rows() == M.rows());
    const auto W = apply_weights(M, {2, 0});
    CHECK(W.at(0, 0) == SkewPoly::x_pow(f, 2));
    CHECK(W.at(0, 1) == SkewPoly::x_pow(f, 1));
    CHECK_THROWS_AS(apply_weights(M, {0, 0, 0}), std::invalid_argument);

    // degree of a weighted row is max_j (deg v_j + gamma_j)
    const auto W2 = apply_weights(M, {5, 1});
    CHECK(vec_degree(W2.row(0)).get() == 5);
}

TEST_CASE("tiny instance: minimal solution is lambda = x") {
    const auto P = tiny_f4();

    const auto oracle = oracle_min_degree(P, 6);
    REQUIRE(oracle.found);
    CHECK(oracle.deg == 1);
    CHECK(*oracle.lambda == SkewPoly::x_pow(P.field(), 1));
    CHECK(oracle.unique);

    for (auto engine : {Engine::MS, Engine::DD}) {
        const auto sol = solve(P, engine);
        CHECK(sol.deg_lambda == 1);
        CHECK(sol.lambda == SkewPoly::x_pow(P.field(), 1));
        CHECK(sol.omega[0].is_zero());
        CHECK(verify_solution(P, sol));
        CHECK(sol.engine == engine);
    }
}

TEST_CASE("zero sequences give lambda = 1") {
    auto f = testutil::f8();
    ShiftRegisterProblem P(f, {SkewPoly::zero(f), SkewPoly::zero(f)},
                           {poly(f, {1, 1, 1}), SkewPoly::x_pow(f, 3)}, {0, 1, 2});
    for (auto engine : {Engine::MS, Engine::DD}) {
        const auto sol = solve(P, engine);
        CHECK(sol.deg_lambda == 0);
        CHECK(sol.lambda == SkewPoly::one(f));
        CHECK(verify_solution(P, sol));
    }
    const auto oracle = oracle_min_degree(P, 3);
    CHECK(oracle.deg == 0);
}

TEST_CASE("gamma_0 >= mu shortcut returns (1, s_1, ..., s_ell)") {
    auto f = testutil::f4();
    ShiftRegisterProblem P(f, {poly(f, {2, 3})}, {poly(f, {1, 1, 0, 1})}, {3, 0});
    REQUIRE(P.gamma(0) >= P.mu());
    for (auto engine : {Engine::MS, Engine::DD}) {
        const auto sol = solve(P, engine);
        CHECK(sol.deg_lambda == 0);
        CHECK(sol.lambda == SkewPoly::one(f));
        CHECK(sol.omega[0] == P.s(1));
        CHECK(verify_solution(P, sol));
        CHECK(sol.counters.transforms == 0);
    }
    const auto oracle = oracle_min_degree(P, 2);
    CHECK(oracle.deg == 0);
}

TEST_CASE("demand-driven h = 0 exit at initialisation") {
    auto f = testutil::f4();
    // all deg s~_i below gamma_0, but gamma_0 < mu so no shortcut
    ShiftRegisterProblem P(f, {poly(f, {2})}, {SkewPoly::x_pow(f, 4)}, {2, 0});
    REQUIRE(P.gamma(0) < P.mu());
    const auto sol = solve_dd(P);
    CHECK(sol.deg_lambda == 0);
    CHECK(sol.lambda == SkewPoly::one(f));
    CHECK(sol.counters.loop_iterations == 0);
    CHECK(verify_solution(P, sol));
}

TEST_CASE("verify_solution rejects invalid candidates") {
    const auto P = tiny_f4();
    auto f = P.field();

    auto sol = solve_ms(P);
    REQUIRE(verify_solution(P, sol));

    SECTION("lambda = 1 fails the degree constraint here") {
        SrSolution bad;
        bad.lambda = SkewPoly::one(f);
        bad.omega = {P.s(1)};
        bad.deg_lambda = 0;
        CHECK(!verify_solution(P, bad));
    }
    SECTION("tampered omega fails the congruence") {
        sol.omega[0] = sol.omega[0] + SkewPoly::one(f);
        CHECK(!verify_solution(P, sol));
    }
    SECTION("zero lambda is never a solution") {
        sol.lambda = SkewPoly::zero(f);
        CHECK(!verify_solution(P, sol));
    }
}

TEST_CASE("oracle agreement on random instances") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const auto P = generate_instance(small_params(seed));
        const auto sol_ms = solve_ms(P);
        const auto sol_dd = solve_dd(P);
        CHECK(verify_solution(P, sol_ms));
        CHECK(verify_solution(P, sol_dd));
        CHECK(sol_ms.deg_lambda == sol_dd.deg_lambda);
        const auto oracle = oracle_min_degree(P, sol_ms.deg_lambda + 1);
        REQUIRE(oracle.found);
        CHECK(oracle.deg == sol_ms.deg_lambda);
        if (oracle.unique) CHECK(sol_ms.lambda == *oracle.lambda);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("engines agree across shapes and twists") {
    for (auto shape : {InstanceShape::Generic, InstanceShape::Monomial, InstanceShape::Gao}) {
        for (std::uint64_t seed = 100; seed < 130; ++seed) {
            const auto P = generate_instance(small_params(seed, shape));
            const auto sol_ms = solve_ms(P);
            const auto sol_dd = solve_dd(P);
            CHECK(verify_solution(P, sol_ms));
            CHECK(verify_solution(P, sol_dd));
            CHECK(sol_ms.deg_lambda == sol_dd.deg_lambda);
        }
    }
}

TEST_CASE("transformation and iteration bounds hold") {
    for (std::uint64_t seed = 200; seed < 260; ++seed) {
        const auto P = generate_instance(small_params(seed));
        const std::int64_t ell = P.ell();
        const std::int64_t budget = (ell + 1) * (P.mu() - P.gamma(0) + 1);

        const auto sol_ms = solve_ms(P);
        CHECK(sol_ms.counters.transforms <= static_cast<std::uint64_t>(std::max<std::int64_t>(budget, 0)));
        for (const auto& rec : sol_ms.transform_log.value_trace)
            CHECK(rec.value_after < rec.value_before);

        const auto sol_dd = solve_dd(P);
        CHECK(sol_dd.counters.loop_iterations <=
              static_cast<std::uint64_t>(std::max<std::int64_t>(budget + ell + 1, 0)));
    }
}

TEST_CASE("demand-driven state stays within the linear memory budget") {
    for (std::uint64_t seed = 300; seed < 330; ++seed) {
        const auto P = generate_instance(small_params(seed));
        const auto sol = solve_dd(P);
        const std::int64_t bound = 4 * (P.ell() + 1) * (P.mu() + 1);
        CHECK(sol.counters.peak_coeffs <= bound);
    }
}

TEST_CASE("ms weak popov postcondition and OD laws on generated instances") {
    for (std::uint64_t seed = 400; seed < 430; ++seed) {
        const auto P = generate_instance(small_params(seed));
        if (P.gamma(0) >= P.mu()) continue;
        const auto weighted = apply_weights(build_basis(P), P.gamma_all());
        const auto detdeg = det_degree_triangular(weighted);
        CHECK(orthogonality_defect(weighted, detdeg) <= P.mu() - P.gamma(0));
        auto [reduced, log] = mulders_storjohann(weighted);
        CHECK(is_weak_popov(reduced));
        CHECK(orthogonality_defect(reduced, detdeg) == 0);
    }
}

TEST_CASE("oracle budget is enforced") {
    auto f = testutil::f256();
    ShiftRegisterProblem P(f, {SkewPoly::x_pow(f, 3)}, {SkewPoly::x_pow(f, 6)}, {0, 0});
    CHECK_THROWS_AS(oracle_min_degree(P, 6, 1000), std::runtime_error);
}
