#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cbpenta/system.hpp"

namespace cbpenta {

/// Scalar auxiliary parameters of the corner-coupling split. All four
/// must be nonzero and finite. The solution is parameter-independent in
/// exact arithmetic, but certain ratios lambda = beta/alpha and
/// sigma = delta/gamma make intermediate matrices singular for a given
/// system; the factorization reports that as a singular error.
struct SolverParams {
    double alpha = 1.0;
    double beta = -1.0;
    double gamma = 1.0;
    double delta = -1.0;

    double lambda() const noexcept { return beta / alpha; }
    double sigma() const noexcept { return delta / gamma; }

    /// Throws UsageError unless all four values are nonzero and finite.
    void validate() const;
};

/// Row-pivoted LU of the dense 2m-by-2m coupling matrix, kept in
/// factored form so repeated solves need no inversion.
class CouplingLu {
public:
    CouplingLu() = default;

    /// Factors the matrix. Throws SingularAuxiliaryError on pivot collapse.
    explicit CouplingLu(DenseMatrix s);

    int dim() const noexcept { return dim_; }

    /// Solves in place: rhs (length 2m) becomes the solution.
    void solve(std::span<double> rhs) const;

private:
    int dim_ = 0;
    DenseMatrix lu_;
    std::vector<int> perm_;
};

/// One solve outcome. The solve paths do not retain the original
/// system, so err and res are filled by callers that hold it (and, for
/// err, know the exact solution); residual_inf provides res.
struct SolveReport {
    BlockVector x;
    SmallVec u, v;
    std::optional<double> err;
    std::optional<double> res;
    double factor_seconds = 0.0;
    double solve_seconds = 0.0;
};

/// Everything the solve phase needs, computed once per matrix:
///
///  - the boundary-modified banded factorization (stage inverses F_k,
///    upper factors P_k and Q_k, lower combinations H_k),
///  - the back-substituted correction columns U_k and V_k of the
///    solution ansatz x = y - U u - V v,
///  - the factored 2m-by-2m coupling system for (u, v),
///  - the retained originals the solve phase still reads: the A band
///    (it drives the forward recurrence) and the corner blocks B_1,
///    D_n, E_{n-1}, E_n for the coupling right-hand side.
///
/// Immutable once constructed; concurrent solves on one Factorization
/// are safe.
class Factorization {
public:
    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }
    const SolverParams& params() const noexcept { return params_; }
    double factor_seconds() const noexcept { return factor_seconds_; }

private:
    friend Factorization factorize(const BlockPentaCyclic&, const SolverParams&);
    friend SolveReport solve(const Factorization&, const BlockVector&);

    int m_ = 0, n_ = 0;
    SolverParams params_;
    // Indexed by 0-based row r. Valid ranges: f_[0..n), p_[0..n-1),
    // q_[0..n-2), h_[1..n); unused slots stay empty.
    std::vector<Block> f_, p_, q_, h_;
    std::vector<Block> u_, v_;
    std::vector<Block> a_;            // original A band
    Block b1_, dn_, en1_, en_;        // original corner blocks
    CouplingLu coupling_;
    double factor_seconds_ = 0.0;
};

/// Builds the factorization: applies the corner-fold boundary
/// modification, runs the banded factorization, computes and
/// back-substitutes the correction columns, and factors the coupling
/// system. The input matrix is not modified. Throws SingularBlockError
/// (with the failing stage) or SingularAuxiliaryError.
Factorization factorize(const BlockPentaCyclic& mat, const SolverParams& params = {});

/// Solves A x = f using a prepared factorization. No block inversions
/// happen in this path. Thread-safe for concurrent calls on one
/// factorization.
SolveReport solve(const Factorization& fac, const BlockVector& f);

/// Factor-once, solve-many convenience; each report equals an
/// independent solve(fac, f).
std::vector<SolveReport> solve_multi(const Factorization& fac,
                                     std::span<const BlockVector> fs);

/// Memory-minimal single-RHS path. Consumes the matrix and rhs: band
/// storage is overwritten by factors and correction columns, f by the
/// intermediate solutions and finally x. Extra storage is one m-by-m
/// block (the retained B_1) plus the 2m-by-2m coupling workspace.
SolveReport solve_in_place(BlockPentaCyclic&& mat, BlockVector&& f,
                           const SolverParams& params = {});

}  // namespace cbpenta
