// Command-line front end: solve systems from files, run the built-in
// benchmark families, and cross-check the solver against the dense
// reference path.
//
// Exit codes: 0 ok, 2 usage or parse error, 3 singular factorization,
// 4 I/O failure, 5 verification failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cbpenta/dense_solve.hpp"
#include "cbpenta/problems.hpp"
#include "cbpenta/solver.hpp"
#include "cbpenta/system_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSingular = 3;
constexpr int kExitIo = 4;
constexpr int kExitVerify = 5;

struct SolveOptions {
    std::string system_file;
    std::string output_file;
    cbpenta::SolverParams params;
    std::string exact;  // "ones" compares against the all-ones solution
    bool in_place = false;
};

struct BenchOptions {
    std::string family;
    std::vector<int> sizes;
    int m = 0;  // 0: family default
    std::uint64_t seed = 1;
    double shift = 0.0;  // 0: use 4m
    cbpenta::SolverParams params;
};

struct VerifyOptions {
    std::vector<int> ms{1, 2, 4};
    std::vector<int> ns{5, 8, 12};
    int trials = 20;
    std::uint64_t seed = 7;
    double tol = 1e-9;
    bool inject_singular = false;
};

void add_param_flags(CLI::App* cmd, cbpenta::SolverParams& p) {
    cmd->add_option("--alpha", p.alpha, "auxiliary parameter alpha");
    cmd->add_option("--beta", p.beta, "auxiliary parameter beta");
    cmd->add_option("--gamma", p.gamma, "auxiliary parameter gamma");
    cmd->add_option("--delta", p.delta, "auxiliary parameter delta");
}

int run_solve(const SolveOptions& opt) {
    opt.params.validate();
    cbpenta::SystemData sys = cbpenta::read_system_file(opt.system_file);

    cbpenta::SolveReport report;
    if (opt.in_place) {
        cbpenta::BlockPentaCyclic work = sys.mat;
        cbpenta::BlockVector rhs = sys.f;
        report = cbpenta::solve_in_place(std::move(work), std::move(rhs), opt.params);
    } else {
        report = cbpenta::solve(cbpenta::factorize(sys.mat, opt.params), sys.f);
    }
    report.res = cbpenta::residual_inf(sys.mat, report.x, sys.f);

    cbpenta::write_solution_file(opt.output_file, report.x);
    std::printf("res=%s\n", cbpenta::format_real17(report.res.value()).c_str());
    if (opt.exact == "ones") {
        const cbpenta::BlockVector ones = cbpenta::BlockVector::ones(sys.mat.m(), sys.mat.n());
        double err = 0.0;
        for (std::size_t i = 0; i < ones.flat().size(); ++i)
            err = std::max(err, std::abs(report.x.flat()[i] - ones.flat()[i]));
        std::printf("err=%s\n", cbpenta::format_real17(err).c_str());
    }
    return kExitOk;
}

void print_row(const cbpenta::ExperimentRow& row) {
    std::printf("%d\t%d\t%s\t%s\t%s\t%.6g\t%.6g\n", row.n, row.m,
                cbpenta::format_real17(row.err).c_str(), cbpenta::format_real17(row.res).c_str(),
                cbpenta::format_real17(row.avg_err).c_str(), row.factor_seconds,
                row.solve_seconds);
}

int run_bench(const BenchOptions& opt) {
    opt.params.validate();
    if (opt.sizes.empty()) throw cbpenta::UsageError("bench needs at least one --sizes entry");

    std::printf("n\tm\terr\tres\tavg_err\tfactor_s\tsolve_s\n");
    for (int n : opt.sizes) {
        cbpenta::Problem problem;
        if (opt.family == "random") {
            const int m = opt.m > 0 ? opt.m : 2;
            const double shift = opt.shift > 0.0 ? opt.shift : 4.0 * m;
            problem = cbpenta::gen_random(m, n, shift, opt.seed);
        } else if (opt.family == "circulant") {
            problem = cbpenta::gen_circulant(opt.m > 0 ? opt.m : 7, n);
        } else if (opt.family == "bvp") {
            problem = cbpenta::gen_bvp(n);
        } else {
            throw cbpenta::UsageError("unknown bench family '" + opt.family + "'");
        }
        print_row(cbpenta::run_experiment(problem, opt.params));
    }
    return kExitOk;
}

/// Per-instance seed: decorrelates (m, n, trial) cells of one verify run.
std::uint64_t instance_seed(std::uint64_t base, int m, int n, int trial) {
    std::uint64_t x = base;
    for (std::uint64_t salt : {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n),
                               static_cast<std::uint64_t>(trial)}) {
        x ^= salt + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
    }
    return x;
}

int run_verify(const VerifyOptions& opt) {
    if (opt.inject_singular) {
        // Self-test of the singular error path: a parameter ratio known to
        // collapse the first stage pivot of the reference system.
        cbpenta::Problem bad = cbpenta::worked_example();
        cbpenta::SolverParams params;
        params.alpha = 1.0;
        params.beta = -3.0;
        params.gamma = 1.0;
        params.delta = 1.0;
        try {
            cbpenta::factorize(bad.mat, params);
        } catch (const cbpenta::SingularError& e) {
            std::fprintf(stderr, "injected singular system rejected as expected: %s\n", e.what());
            return kExitSingular;
        }
        std::fprintf(stderr, "self-test failed: injected singular system was accepted\n");
        return kExitVerify;
    }

    std::printf("m\tn\tmax_rel_diff\n");
    double worst = 0.0;
    bool ok = true;
    for (int m : opt.ms) {
        for (int n : opt.ns) {
            double cell_worst = 0.0;
            for (int trial = 0; trial < opt.trials; ++trial) {
                cbpenta::Problem problem;
                if (trial == 0) {
                    // An identity instance anchors the comparison at zero.
                    cbpenta::Bands bands;
                    const cbpenta::Block ident = cbpenta::Block::identity(m);
                    const cbpenta::Block zero(m);
                    bands.a.assign(static_cast<std::size_t>(n), zero);
                    bands.b.assign(static_cast<std::size_t>(n), zero);
                    bands.c.assign(static_cast<std::size_t>(n), ident);
                    bands.d.assign(static_cast<std::size_t>(n), zero);
                    bands.e.assign(static_cast<std::size_t>(n), zero);
                    auto mat = cbpenta::BlockPentaCyclic::from_bands(std::move(bands));
                    cbpenta::Uniform01 rng(instance_seed(opt.seed, m, n, trial));
                    cbpenta::BlockVector f(m, n);
                    for (double& v : f.flat()) v = rng.next();
                    cbpenta::BlockVector x = f;
                    problem = cbpenta::Problem{std::move(mat), std::move(f), std::move(x)};
                } else {
                    problem =
                        cbpenta::gen_random(m, n, 4.0 * m, instance_seed(opt.seed, m, n, trial));
                }

                const auto report = cbpenta::solve(cbpenta::factorize(problem.mat), problem.f);
                const auto dense = cbpenta::to_dense(problem.mat);
                std::vector<double> rhs(problem.f.flat().begin(), problem.f.flat().end());
                const std::vector<double> x_ref = cbpenta::dense_solve(dense, rhs);

                double diff = 0.0;
                for (std::size_t i = 0; i < x_ref.size(); ++i)
                    diff = std::max(diff, std::abs(report.x.flat()[i] - x_ref[i]));
                const double ref_norm = cbpenta::inf_norm_vec(x_ref);
                const double rel = ref_norm > 0.0 ? diff / ref_norm : diff;

                cell_worst = std::max(cell_worst, rel);
                if (rel > opt.tol) {
                    ok = false;
                    std::printf("FAIL\tm=%d\tn=%d\ttrial=%d\tseed=%llu\trel=%s\n", m, n, trial,
                                static_cast<unsigned long long>(instance_seed(opt.seed, m, n, trial)),
                                cbpenta::format_real17(rel).c_str());
                }
            }
            std::printf("%d\t%d\t%s\n", m, n, cbpenta::format_real17(cell_worst).c_str());
            worst = std::max(worst, cell_worst);
        }
    }
    std::printf("max=%s\n", cbpenta::format_real17(worst).c_str());
    return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Direct solver for cyclic block penta-diagonal linear systems"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve a system file, write a solution file");
    solve_cmd->add_option("system_file", solve_opt.system_file, "input system file")->required();
    solve_cmd->add_option("output_file", solve_opt.output_file, "output solution file")->required();
    add_param_flags(solve_cmd, solve_opt.params);
    solve_cmd->add_option("--exact", solve_opt.exact,
                          "known exact solution for error reporting ('ones')");
    solve_cmd->add_flag("--in-place", solve_opt.in_place, "use the memory-minimal single-rhs path");

    BenchOptions bench_opt;
    CLI::App* bench_cmd = app.add_subcommand("bench", "run a benchmark family, print a TSV table");
    bench_cmd->add_option("family", bench_opt.family, "random | circulant | bvp")->required();
    bench_cmd->add_option("--sizes", bench_opt.sizes, "comma-separated list of n values")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--m", bench_opt.m, "block dimension (default: 2 random, 7 circulant)");
    bench_cmd->add_option("--seed", bench_opt.seed, "seed for the random family");
    bench_cmd->add_option("--shift", bench_opt.shift, "diagonal shift (default 4m)");
    add_param_flags(bench_cmd, bench_opt.params);

    VerifyOptions verify_opt;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "compare the solver against the dense reference path");
    verify_cmd->add_option("--m", verify_opt.ms, "block dimensions")->delimiter(',');
    verify_cmd->add_option("--n", verify_opt.ns, "block row counts")->delimiter(',');
    verify_cmd->add_option("--trials", verify_opt.trials, "instances per (m, n) cell");
    verify_cmd->add_option("--seed", verify_opt.seed, "base seed");
    verify_cmd->add_option("--tol", verify_opt.tol, "max allowed relative difference");
    verify_cmd->add_flag("--inject-singular", verify_opt.inject_singular,
                         "self-test: run a known-singular configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve_opt);
        if (bench_cmd->parsed()) return run_bench(bench_opt);
        return run_verify(verify_opt);
    } catch (const cbpenta::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const cbpenta::UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const cbpenta::SingularError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSingular;
    } catch (const cbpenta::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
