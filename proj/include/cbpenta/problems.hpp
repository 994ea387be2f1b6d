#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cbpenta/solver.hpp"
#include "cbpenta/system.hpp"

namespace cbpenta {

/// A generated test system together with its right-hand side and the
/// exact solution it was built from (f = A * x_exact).
struct Problem {
    BlockPentaCyclic mat;
    BlockVector f;
    BlockVector x_exact;
};

/// Pinned portable uniform [0,1) source: mt19937_64 seeded directly,
/// doubles taken as the top 53 bits of each draw scaled by 2^-53.
/// Identical streams on every platform for a given seed.
class Uniform01 {
public:
    explicit Uniform01(std::uint64_t seed) : eng_(seed) {}

    double next() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

/// Random dense-block system: every band entry is i.i.d. uniform [0,1),
/// drawn per block row in band order A, B, C, D, E, row-major within a
/// block; then `shift` is added to each diagonal entry of every C_k to
/// keep the system comfortably solvable. x_exact is all ones.
Problem gen_random(int m, int n, double shift, std::uint64_t seed);

/// Circulant-block test family: A_k = E_k = I, B_k = D_k =
/// circ(-7.2, 1.8, ..., 1.8), C_k = circ(22, -8, 1, ..., 1, -8).
/// Requires m >= 3 (the C pattern needs a head, a second entry, and a
/// wrapped tail). x_exact is all ones.
Problem gen_circulant(int m, int n);

/// Uniform periodic grid on [0,1]: h = 1/n, x_k = (k-1)h for k = 1..n.
struct BvpProblem {
    int n_intervals = 0;
    double h = 0.0;
    std::vector<double> grid;

    static BvpProblem make(int n);
};

/// Periodic two-point boundary value problem for the coupled pair
/// y1'' + y2 = cos(2 pi x) - 4 pi^2 sin(2 pi x),
/// y2'' + y1 = sin(2 pi x) - 4 pi^2 cos(2 pi x)
/// discretized with the fourth-order five-point stencil for y'' on the
/// grid of BvpProblem::make(n). m = 2; x_exact holds the samples of the
/// exact solution y1 = sin(2 pi x), y2 = cos(2 pi x).
Problem gen_bvp(int n);

/// The 2x2-block, 5-row reference system with constant bands and
/// f_k = (10, 10)^T, whose solution is x_k = (1, 1)^T.
Problem worked_example();

/// Mean over block rows of the summed component-wise absolute errors:
/// (1/n) * sum_k sum_j |x[k][j] - x_exact[k][j]|.
double avg_error(const BlockVector& x, const BlockVector& x_exact);

/// One benchmark measurement. err and res are infinity norms; avg_err
/// is the mean absolute error per solution component (the per-sample
/// mean, sum / (n*m)), the normalization the reference error tables
/// use.
struct ExperimentRow {
    int n = 0;
    int m = 0;
    double err = 0.0;
    double res = 0.0;
    double avg_err = 0.0;
    double factor_seconds = 0.0;
    double solve_seconds = 0.0;
};

/// Factorizes and solves the problem, returning the error metrics
/// against the stored exact solution.
ExperimentRow run_experiment(const Problem& problem, const SolverParams& params = {});

}  // namespace cbpenta
