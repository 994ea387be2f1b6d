#include "cbpenta/problems.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace cbpenta {

namespace {

Block random_block(int m, Uniform01& rng) {
    Block b(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) b(i, j) = rng.next();
    return b;
}

Problem finish(BlockPentaCyclic mat, BlockVector x_exact) {
    BlockVector f = matvec(mat, x_exact);
    return Problem{std::move(mat), std::move(f), std::move(x_exact)};
}

}  // namespace

Problem gen_random(int m, int n, double shift, std::uint64_t seed) {
    Uniform01 rng(seed);
    Bands bands;
    bands.a.reserve(static_cast<std::size_t>(n));
    bands.b.reserve(static_cast<std::size_t>(n));
    bands.c.reserve(static_cast<std::size_t>(n));
    bands.d.reserve(static_cast<std::size_t>(n));
    bands.e.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        bands.a.push_back(random_block(m, rng));
        bands.b.push_back(random_block(m, rng));
        Block c = random_block(m, rng);
        for (int i = 0; i < m; ++i) c(i, i) += shift;
        bands.c.push_back(std::move(c));
        bands.d.push_back(random_block(m, rng));
        bands.e.push_back(random_block(m, rng));
    }
    return finish(BlockPentaCyclic::from_bands(std::move(bands)), BlockVector::ones(m, n));
}

Problem gen_circulant(int m, int n) {
    if (m < 3) throw UsageError("circulant family needs m >= 3");

    SmallVec c_row(static_cast<std::size_t>(m), 1.0);
    c_row[0] = 22.0;
    c_row[1] = -8.0;
    c_row[static_cast<std::size_t>(m - 1)] = -8.0;

    SmallVec b_row(static_cast<std::size_t>(m), 1.8);
    b_row[0] = -7.2;

    const Block ident = Block::identity(m);
    const Block c_blk = circulant(c_row);
    const Block b_blk = circulant(b_row);

    Bands bands;
    bands.a.assign(static_cast<std::size_t>(n), ident);
    bands.b.assign(static_cast<std::size_t>(n), b_blk);
    bands.c.assign(static_cast<std::size_t>(n), c_blk);
    bands.d.assign(static_cast<std::size_t>(n), b_blk);
    bands.e.assign(static_cast<std::size_t>(n), ident);
    return finish(BlockPentaCyclic::from_bands(std::move(bands)), BlockVector::ones(m, n));
}

BvpProblem BvpProblem::make(int n) {
    if (n < 5) throw UsageError("bvp grid needs n >= 5");
    BvpProblem p;
    p.n_intervals = n;
    p.h = 1.0 / n;
    p.grid.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) p.grid[static_cast<std::size_t>(k)] = k * p.h;
    return p;
}

Problem gen_bvp(int n) {
    const BvpProblem grid = BvpProblem::make(n);
    const double h2_12 = 12.0 * grid.h * grid.h;
    const double two_pi = 2.0 * std::numbers::pi;
    const double four_pi2 = two_pi * two_pi;

    Block c(2);
    c(0, 0) = -30.0;
    c(0, 1) = h2_12;
    c(1, 0) = h2_12;
    c(1, 1) = -30.0;

    Block off = Block::identity(2);
    off *= 16.0;
    Block corner = Block::identity(2);
    corner *= -1.0;

    Bands bands;
    bands.a.assign(static_cast<std::size_t>(n), corner);
    bands.b.assign(static_cast<std::size_t>(n), off);
    bands.c.assign(static_cast<std::size_t>(n), c);
    bands.d.assign(static_cast<std::size_t>(n), off);
    bands.e.assign(static_cast<std::size_t>(n), corner);

    BlockVector f(2, n);
    BlockVector exact(2, n);
    for (int k = 0; k < n; ++k) {
        const double x = grid.grid[static_cast<std::size_t>(k)];
        const double s = std::sin(two_pi * x);
        const double cs = std::cos(two_pi * x);
        f.block(k)[0] = h2_12 * (cs - four_pi2 * s);
        f.block(k)[1] = h2_12 * (s - four_pi2 * cs);
        exact.block(k)[0] = s;
        exact.block(k)[1] = cs;
    }
    return Problem{BlockPentaCyclic::from_bands(std::move(bands)), std::move(f), std::move(exact)};
}

Problem worked_example() {
    const int n = 5;
    const Block a(2, {1, 1, 1, -1});
    const Block b(2, {-1, 1, 1, 1});
    const Block c(2, {1, 5, 5, 1});
    const Block d(2, {1, -1, 1, 1});
    const Block e(2, {1, 1, -1, 1});

    Bands bands;
    bands.a.assign(n, a);
    bands.b.assign(n, b);
    bands.c.assign(n, c);
    bands.d.assign(n, d);
    bands.e.assign(n, e);
    return finish(BlockPentaCyclic::from_bands(std::move(bands)), BlockVector::ones(2, n));
}

double avg_error(const BlockVector& x, const BlockVector& x_exact) {
    if (x.m() != x_exact.m() || x.n() != x_exact.n())
        throw UsageError("avg_error dimension mismatch");
    double total = 0.0;
    auto xs = x.flat();
    auto es = x_exact.flat();
    for (std::size_t i = 0; i < xs.size(); ++i) total += std::abs(xs[i] - es[i]);
    return total / x.n();
}

ExperimentRow run_experiment(const Problem& problem, const SolverParams& params) {
    const Factorization fac = factorize(problem.mat, params);
    const SolveReport report = solve(fac, problem.f);

    ExperimentRow row;
    row.n = problem.mat.n();
    row.m = problem.mat.m();
    row.avg_err = avg_error(report.x, problem.x_exact) / problem.mat.m();
    row.res = residual_inf(problem.mat, report.x, problem.f);
    row.factor_seconds = report.factor_seconds;
    row.solve_seconds = report.solve_seconds;

    double err = 0.0;
    auto xs = report.x.flat();
    auto es = problem.x_exact.flat();
    for (std::size_t i = 0; i < xs.size(); ++i) err = std::max(err, std::abs(xs[i] - es[i]));
    row.err = err;
    return row;
}

}  // namespace cbpenta
