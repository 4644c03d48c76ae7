// Command-line front end: solve shift-register instances from JSON files,
// verify solutions, generate random instances, benchmark the two engines and
// run the interleaved Gabidulin decoding demo.
//
// Exit codes: 0 success, 1 verification/decoding failure, 2 input error,
// 3 internal error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skewmin/gabidulin.hpp"
#include "skewmin/generate.hpp"
#include "skewmin/io.hpp"
#include "skewmin/shift_register.hpp"

using namespace skewmin;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
    if (path) {
        std::ofstream out(*path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write " + *path);
        out << text;
    } else {
        std::cout << text;
    }
}

Engine parse_engine(const std::string& s) {
    if (s == "ms") return Engine::MS;
    if (s == "dd") return Engine::DD;
    throw std::invalid_argument("unknown engine: " + s);
}

struct FieldOpts {
    std::uint32_t p = 2;
    std::uint32_t m = 4;
    std::uint32_t s = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--p", p, "field characteristic (prime)");
        cmd->add_option("--m", m, "extension degree");
        cmd->add_option("--s", s, "frobenius exponent, theta(a) = a^(p^s)");
    }
    FieldRef make() const { return make_field(p, m, find_irreducible(p, m), s); }
};

int cmd_solve(const std::string& in_path, const std::string& engine,
              const std::optional<std::string>& out_path) {
    const auto P = instance_from_json(load_json(in_path));
    const auto sol = solve(P, parse_engine(engine));
    if (!verify_solution(P, sol)) throw std::runtime_error("solver produced an invalid solution");
    std::cout << "deg_lambda=" << sol.deg_lambda << " field_ops=" << sol.counters.field_ops()
              << " transforms=" << sol.counters.transforms << "\n";
    if (out_path) write_output(out_path, solution_to_json(sol).dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path) {
    const auto P = instance_from_json(load_json(instance_path));
    const json js = load_json(solution_path);
    // a solution file may carry its own field description; it must match
    if (js.contains("field") && !field_from_json(js.at("field"))->same(*P.field()))
        throw std::invalid_argument("field parameters differ between instance and solution");
    const auto sol = solution_from_json(P.field(), js);
    if (verify_solution(P, sol)) {
        std::cout << "ok\n";
        return kExitOk;
    }
    std::cout << "verification failed\n";
    return kExitVerifyFailed;
}

int cmd_gen(const GenParams& gp, const std::optional<std::string>& out_path) {
    const auto P = generate_instance(gp);
    write_output(out_path, instance_to_json(P).dump(2) + "\n");
    return kExitOk;
}

int cmd_bench(const FieldOpts& field, const std::vector<std::int64_t>& mu_ladder,
              std::int64_t ell, const std::string& engine_str, std::int64_t trials,
              std::uint64_t seed, const std::string& shape,
              const std::optional<std::string>& out_path) {
    const Engine engine = parse_engine(engine_str);
    std::ostringstream csv;
    csv << "engine,ell,mu,field_ops,transforms,wall_time_ms,seed\n";
    for (std::size_t rung = 0; rung < mu_ladder.size(); ++rung) {
        const std::int64_t mu = mu_ladder[rung];
        if (mu < 1) throw std::invalid_argument("mu must be >= 1");
        for (std::int64_t trial = 0; trial < trials; ++trial) {
            GenParams gp;
            gp.p = field.p;
            gp.m = field.m;
            gp.s = field.s;
            gp.ell = ell;
            gp.max_deg_g = mu;
            gp.max_gamma = 0;
            gp.exact_degrees = true;  // pins the instance size to mu
            gp.shape = shape_from_string(shape);
            gp.seed = seed + 1000003 * static_cast<std::uint64_t>(rung) +
                      static_cast<std::uint64_t>(trial);
            const auto P = generate_instance(gp);
            const auto t0 = std::chrono::steady_clock::now();
            const auto sol = solve(P, engine);
            const auto t1 = std::chrono::steady_clock::now();
            if (!verify_solution(P, sol))
                throw std::runtime_error("benchmark solution failed verification");
            if (engine == Engine::MS) {
                const auto bound = static_cast<std::uint64_t>(
                    (P.ell() + 1) * (P.mu() - P.gamma(0) + 1));
                if (sol.counters.transforms > bound)
                    throw std::runtime_error("transformation count exceeded its bound");
            }
            const double ms =
                std::chrono::duration<double, std::milli>(t1 - t0).count();
            csv << engine_name(sol.engine) << ',' << P.ell() << ',' << P.mu() << ','
                << sol.counters.field_ops() << ',' << sol.counters.transforms << ',' << ms << ','
                << gp.seed << "\n";
        }
    }
    write_output(out_path, csv.str());
    return kExitOk;
}

std::vector<FieldElement> power_basis_points(const FieldRef& f, std::int64_t n) {
    if (n < 1 || n > f->m()) throw std::invalid_argument("code length must satisfy 1 <= n <= m");
    std::vector<FieldElement> pts;
    for (std::int64_t i = 0; i < n; ++i) {
        std::vector<std::uint32_t> c(f->m(), 0);
        c[static_cast<std::size_t>(i)] = 1;
        pts.push_back(FieldElement(f, std::move(c)));
    }
    return pts;
}

int cmd_gabidulin(const FieldOpts& field, const std::string& mode, std::int64_t n,
                  const std::vector<std::int64_t>& dims, std::int64_t t, std::int64_t trials,
                  std::uint64_t seed, const std::optional<std::string>& out_path) {
    const auto f = field.make();
    const GabidulinCode code(f, dims, power_basis_points(f, n));
    Rng rng(seed);

    auto run_trial = [&](std::int64_t rank) {
        std::vector<std::vector<FieldElement>> msgs;
        for (auto k : code.dims()) {
            std::vector<FieldElement> msg;
            for (std::int64_t i = 0; i < k; ++i) msg.push_back(random_element(f, rng));
            msgs.push_back(std::move(msg));
        }
        auto word = encode(code, msgs);
        const auto err = random_rank_error(f, code.ell(), n, rank, rng);
        for (std::size_t i = 0; i < word.rows.size(); ++i)
            for (std::size_t j = 0; j < word.rows[i].size(); ++j)
                word.rows[i][j] = word.rows[i][j] + err[i][j];
        const auto res = decode(code, word);
        return std::pair<bool, std::uint64_t>{res.success && res.messages == msgs,
                                              res.counters.field_ops()};
    };

    if (mode == "roundtrip") {
        const std::int64_t cap = std::min(t, code.unique_radius());
        for (std::int64_t rank = 0; rank <= cap; ++rank) {
            for (std::int64_t trial = 0; trial < trials; ++trial) {
                if (!run_trial(rank).first) {
                    std::cout << "decoding failed at rank " << rank << "\n";
                    return kExitVerifyFailed;
                }
            }
        }
        std::cout << "all decodes up to rank " << cap << " succeeded\n";
        return kExitOk;
    }
    if (mode == "trials") {
        std::ostringstream csv;
        csv << "t,trials,successes,mean_field_ops\n";
        for (std::int64_t rank = 0; rank <= t; ++rank) {
            std::int64_t successes = 0;
            std::uint64_t ops_total = 0;
            for (std::int64_t trial = 0; trial < trials; ++trial) {
                const auto [ok, ops] = run_trial(rank);
                if (ok) ++successes;
                ops_total += ops;
            }
            csv << rank << ',' << trials << ',' << successes << ','
                << (trials ? static_cast<double>(ops_total) / static_cast<double>(trials) : 0.0)
                << "\n";
        }
        write_output(out_path, csv.str());
        return kExitOk;
    }
    throw std::invalid_argument("unknown mode: " + mode);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shift-register solving over skew polynomial rings"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve an instance file");
    std::string solve_in, solve_engine = "ms";
    std::optional<std::string> solve_out;
    solve_cmd->add_option("--in", solve_in, "instance JSON")->required();
    solve_cmd->add_option("--engine", solve_engine, "ms|dd");
    solve_cmd->add_option("--out", solve_out, "solution JSON output path");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check a solution against an instance");
    std::string verify_instance, verify_solution_path;
    verify_cmd->add_option("--instance", verify_instance, "instance JSON")->required();
    verify_cmd->add_option("--solution", verify_solution_path, "solution JSON")->required();

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
    FieldOpts gen_field;
    gen_field.attach(gen_cmd);
    GenParams gp;
    std::string gen_shape = "generic";
    std::optional<std::string> gen_out;
    gen_cmd->add_option("--ell", gp.ell, "number of sequences");
    gen_cmd->add_option("--max-deg-g", gp.max_deg_g, "modulus degree bound");
    gen_cmd->add_option("--max-gamma", gp.max_gamma, "weight bound");
    gen_cmd->add_option("--shape", gen_shape, "generic|monomial|gao");
    gen_cmd->add_option("--seed", gp.seed, "PRNG seed");
    gen_cmd->add_flag("--exact-degrees", gp.exact_degrees, "pin modulus degrees to the bound");
    gen_cmd->add_option("--out", gen_out, "output path (default stdout)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "benchmark an engine over a mu ladder");
    FieldOpts bench_field;
    bench_field.attach(bench_cmd);
    std::vector<std::int64_t> mu_ladder;
    std::int64_t bench_ell = 2, bench_trials = 10;
    std::string bench_engine = "dd", bench_shape = "monomial";
    std::uint64_t bench_seed = 1;
    std::optional<std::string> bench_out;
    bench_cmd->add_option("--mu", mu_ladder, "instance sizes (repeatable)");
    bench_cmd->add_option("--ell", bench_ell, "number of sequences");
    bench_cmd->add_option("--engine", bench_engine, "ms|dd");
    bench_cmd->add_option("--trials", bench_trials, "trials per size");
    bench_cmd->add_option("--seed", bench_seed, "PRNG seed");
    bench_cmd->add_option("--shape", bench_shape, "monomial|gao|generic");
    bench_cmd->add_option("--out", bench_out, "CSV output path (default stdout)");

    // gabidulin
    auto* gab_cmd = app.add_subcommand("gabidulin", "interleaved Gabidulin decoding demo");
    FieldOpts gab_field;
    gab_field.p = 2;
    gab_field.m = 8;
    gab_field.attach(gab_cmd);
    std::string gab_mode = "roundtrip";
    std::int64_t gab_n = 8, gab_t = 2, gab_trials = 50;
    std::vector<std::int64_t> gab_dims;
    std::uint64_t gab_seed = 1;
    std::optional<std::string> gab_out;
    gab_cmd->add_option("--mode", gab_mode, "roundtrip|trials");
    gab_cmd->add_option("--n", gab_n, "code length");
    gab_cmd->add_option("--k", gab_dims, "constituent dimensions (repeatable)");
    gab_cmd->add_option("--t", gab_t, "max error rank");
    gab_cmd->add_option("--trials", gab_trials, "trials per rank");
    gab_cmd->add_option("--seed", gab_seed, "PRNG seed");
    gab_cmd->add_option("--out", gab_out, "CSV output path (trials mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve_in, solve_engine, solve_out);
        if (*verify_cmd) return cmd_verify(verify_instance, verify_solution_path);
        if (*gen_cmd) {
            gp.p = gen_field.p;
            gp.m = gen_field.m;
            gp.s = gen_field.s;
            gp.shape = shape_from_string(gen_shape);
            return cmd_gen(gp, gen_out);
        }
        if (*bench_cmd)
            return cmd_bench(bench_field, mu_ladder, bench_ell, bench_engine, bench_trials,
                             bench_seed, bench_shape, bench_out);
        if (*gab_cmd) {
            if (gab_dims.empty()) gab_dims = {4};
            return cmd_gabidulin(gab_field, gab_mode, gab_n, gab_dims, gab_t, gab_trials,
                                 gab_seed, gab_out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
    return kExitInputError;
}
