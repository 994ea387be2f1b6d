#include "cbpenta/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace cbpenta {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// acc += s * src
void add_scaled(Block& acc, double s, const Block& src) {
    const int m = acc.dim();
    double* o = acc.data();
    const double* p = src.data();
    for (int i = 0; i < m * m; ++i) o[i] += s * p[i];
}

// acc -= s * src
void sub_scaled(Block& acc, double s, const Block& src) {
    add_scaled(acc, -s, src);
}

// acc += s * (a * b)
void mul_axpy(double s, const Block& a, const Block& b, Block& acc) {
    const int m = a.dim();
    const double* pa = a.data();
    const double* pb = b.data();
    double* o = acc.data();
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < m; ++k) {
            const double f = s * pa[i * m + k];
            const double* brow = pb + k * m;
            double* orow = o + i * m;
            for (int j = 0; j < m; ++j) orow[j] += f * brow[j];
        }
    }
}

// y += s * (a * x)
void matvec_axpy(double s, const Block& a, std::span<const double> x, std::span<double> y) {
    const int m = a.dim();
    const double* pa = a.data();
    for (int i = 0; i < m; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) acc += pa[i * m + j] * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] += s * acc;
    }
}

Block invert_stage(const Block& blk, int stage) {
    try {
        return mat_invert(blk);
    } catch (const SingularBlockError& err) {
        throw SingularBlockError("factorization stage " + std::to_string(stage) + ": " +
                                     err.what() + " (bad parameter choice or singular system)",
                                 stage);
    }
}

/// Corner blocks of the original matrix that feed the coupling system.
struct Corners {
    const Block& a1;
    const Block& b1;
    const Block& a2;
    const Block& dn;
    const Block& en;
    const Block& en1;  // E_{n-1}
};

void place_block(DenseMatrix& dst, int row0, int col0, const Block& blk) {
    for (int i = 0; i < blk.dim(); ++i)
        for (int j = 0; j < blk.dim(); ++j) dst.at(row0 + i, col0 + j) = blk(i, j);
}

/// Assembles the 2m-by-2m coupling matrix from the first/last correction
/// column blocks. uc/vc index order: {col 1, col 2, col n-1, col n}.
DenseMatrix build_coupling_matrix(int m, const SolverParams& pr, const Corners& cb,
                                  const Block* uc[4], const Block* vc[4]) {
    Block s11 = Block::identity(m);
    mul_axpy(pr.alpha, cb.a1, *uc[2], s11);
    mul_axpy(pr.alpha, cb.b1, *uc[3], s11);
    mul_axpy(pr.beta, cb.dn, *uc[0], s11);
    mul_axpy(pr.beta, cb.en, *uc[1], s11);

    Block s12(m);
    mul_axpy(pr.alpha, cb.a1, *vc[2], s12);
    mul_axpy(pr.alpha, cb.b1, *vc[3], s12);
    mul_axpy(pr.beta, cb.dn, *vc[0], s12);
    mul_axpy(pr.beta, cb.en, *vc[1], s12);

    Block s21(m);
    mul_axpy(pr.gamma, cb.a2, *uc[3], s21);
    mul_axpy(pr.delta, cb.en1, *uc[0], s21);

    Block s22 = Block::identity(m);
    mul_axpy(pr.gamma, cb.a2, *vc[3], s22);
    mul_axpy(pr.delta, cb.en1, *vc[0], s22);

    DenseMatrix s(2 * m, 2 * m);
    place_block(s, 0, 0, s11);
    place_block(s, 0, m, s12);
    place_block(s, m, 0, s21);
    place_block(s, m, m, s22);
    return s;
}

/// Coupling right-hand side from the intermediate solution blocks
/// y_1, y_2, y_{n-1}, y_n.
SmallVec build_coupling_rhs(int m, const SolverParams& pr, const Corners& cb,
                            std::span<const double> y1, std::span<const double> y2,
                            std::span<const double> yn1, std::span<const double> yn) {
    SmallVec rhs(static_cast<std::size_t>(2 * m), 0.0);
    std::span<double> top(rhs.data(), static_cast<std::size_t>(m));
    std::span<double> bottom(rhs.data() + m, static_cast<std::size_t>(m));
    matvec_axpy(pr.alpha, cb.a1, yn1, top);
    matvec_axpy(pr.alpha, cb.b1, yn, top);
    matvec_axpy(pr.beta, cb.dn, y1, top);
    matvec_axpy(pr.beta, cb.en, y2, top);
    matvec_axpy(pr.gamma, cb.a2, yn, bottom);
    matvec_axpy(pr.delta, cb.en1, y1, bottom);
    return rhs;
}

}  // namespace

void SolverParams::validate() const {
    for (double v : {alpha, beta, gamma, delta}) {
        if (v == 0.0 || !std::isfinite(v))
            throw UsageError("solver parameters alpha, beta, gamma, delta must be nonzero and finite");
    }
}

CouplingLu::CouplingLu(DenseMatrix s) : dim_(s.rows), lu_(std::move(s)) {
    if (lu_.cols != dim_ || dim_ < 1) throw UsageError("coupling matrix must be square");
    perm_.resize(static_cast<std::size_t>(dim_));
    std::iota(perm_.begin(), perm_.end(), 0);

    double scale = 0.0;
    for (double v : lu_.v) {
        if (!std::isfinite(v))
            throw SingularAuxiliaryError("coupling matrix has non-finite entries (breakdown)");
        scale = std::max(scale, std::abs(v));
    }
    const double tol = 1e2 * std::numeric_limits<double>::epsilon() * scale;

    for (int col = 0; col < dim_; ++col) {
        int piv = col;
        double best = std::abs(lu_.at(col, col));
        for (int r = col + 1; r < dim_; ++r) {
            const double v = std::abs(lu_.at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best <= tol)
            throw SingularAuxiliaryError(
                "coupling system singular at column " + std::to_string(col + 1) +
                " (bad parameter choice or singular system)");
        if (piv != col) {
            for (int j = 0; j < dim_; ++j) std::swap(lu_.at(col, j), lu_.at(piv, j));
            std::swap(perm_[static_cast<std::size_t>(col)], perm_[static_cast<std::size_t>(piv)]);
        }
        const double inv_piv = 1.0 / lu_.at(col, col);
        for (int r = col + 1; r < dim_; ++r) {
            const double f = lu_.at(r, col) * inv_piv;
            lu_.at(r, col) = f;
            if (f == 0.0) continue;
            for (int j = col + 1; j < dim_; ++j) lu_.at(r, j) -= f * lu_.at(col, j);
        }
    }
}

void CouplingLu::solve(std::span<double> rhs) const {
    if (static_cast<int>(rhs.size()) != dim_) throw UsageError("coupling rhs size mismatch");
    SmallVec t(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) t[static_cast<std::size_t>(i)] = rhs[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])];
    for (int i = 1; i < dim_; ++i) {
        double s = t[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) s -= lu_.at(i, j) * t[static_cast<std::size_t>(j)];
        t[static_cast<std::size_t>(i)] = s;
    }
    for (int i = dim_ - 1; i >= 0; --i) {
        double s = t[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < dim_; ++j) s -= lu_.at(i, j) * t[static_cast<std::size_t>(j)];
        t[static_cast<std::size_t>(i)] = s / lu_.at(i, i);
    }
    std::copy(t.begin(), t.end(), rhs.begin());
}

Factorization factorize(const BlockPentaCyclic& mat, const SolverParams& params) {
    params.validate();
    const auto t0 = Clock::now();

    const int m = mat.m();
    const int n = mat.n();
    const double lam = params.lambda();
    const double sig = params.sigma();
    const double inv_lam = params.alpha / params.beta;
    const double inv_sig = params.gamma / params.delta;

    Factorization fac;
    fac.m_ = m;
    fac.n_ = n;
    fac.params_ = params;
    fac.a_.reserve(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) fac.a_.push_back(mat.a(r));
    fac.b1_ = mat.b(0);
    fac.dn_ = mat.d(n - 1);
    fac.en1_ = mat.e(n - 2);
    fac.en_ = mat.e(n - 1);

    // Band copies that the factorization overwrites in place: h takes B
    // (lower combinations), f takes C (stage inverses), p takes D and q
    // takes E (upper factors). The A band is retained as-is.
    auto& f = fac.f_;
    auto& p = fac.p_;
    auto& q = fac.q_;
    auto& h = fac.h_;
    f.reserve(static_cast<std::size_t>(n));
    p.reserve(static_cast<std::size_t>(n));
    q.reserve(static_cast<std::size_t>(n));
    h.reserve(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        h.push_back(mat.b(r));
        f.push_back(mat.c(r));
        p.push_back(mat.d(r));
        q.push_back(mat.e(r));
    }

    // Boundary fold: the six corner-adjacent blocks absorb the cyclic
    // coupling so the remaining system is strictly banded.
    sub_scaled(f[0], lam, mat.d(n - 1));
    sub_scaled(p[0], lam, mat.e(n - 1));
    sub_scaled(h[1], sig, mat.e(n - 2));
    sub_scaled(p[static_cast<std::size_t>(n - 2)], inv_sig, mat.a(1));
    sub_scaled(h[static_cast<std::size_t>(n - 1)], inv_lam, mat.a(0));
    sub_scaled(f[static_cast<std::size_t>(n - 1)], inv_lam, mat.b(0));

    // Banded factorization. 0-based row r corresponds to stage k = r+1.
    Block tmp(m);

    tmp = invert_stage(f[0], 1);
    std::swap(f[0], tmp);
    mul_into(f[0], p[0], tmp);
    std::swap(p[0], tmp);
    mul_into(f[0], q[0], tmp);
    std::swap(q[0], tmp);

    mul_sub_into(h[1], p[0], f[1]);
    tmp = invert_stage(f[1], 2);
    std::swap(f[1], tmp);
    mul_sub_into(h[1], q[0], p[1]);
    mul_into(f[1], p[1], tmp);
    std::swap(p[1], tmp);
    mul_into(f[1], q[1], tmp);
    std::swap(q[1], tmp);

    for (int r = 2; r < n; ++r) {
        const std::size_t i = static_cast<std::size_t>(r);
        mul_sub_into(mat.a(r), p[i - 2], h[i]);
        mul_sub_into(h[i], p[i - 1], f[i]);
        mul_sub_into(mat.a(r), q[i - 2], f[i]);
        tmp = invert_stage(f[i], r + 1);
        std::swap(f[i], tmp);
        if (r <= n - 2) {
            mul_sub_into(h[i], q[i - 1], p[i]);
            mul_into(f[i], p[i], tmp);
            std::swap(p[i], tmp);
        }
        if (r <= n - 3) {
            mul_into(f[i], q[i], tmp);
            std::swap(q[i], tmp);
        }
    }

    // Slots past the recurrences still hold raw band copies; the solve
    // phase never reads them, keep them empty per the stated ranges.
    h[0] = Block{};
    p[static_cast<std::size_t>(n - 1)] = Block{};
    q[static_cast<std::size_t>(n - 2)] = Block{};
    q[static_cast<std::size_t>(n - 1)] = Block{};

    // Correction columns, forward recurrences. Seeds carry the injected
    // identity scalings; the last rows pick up the closing terms.
    auto& u = fac.u_;
    auto& v = fac.v_;
    u.assign(static_cast<std::size_t>(n), Block{});
    v.assign(static_cast<std::size_t>(n), Block{});

    u[0] = f[0];
    u[0] *= 1.0 / params.alpha;
    u[1] = Block(m);
    mul_axpy(-1.0, h[1], u[0], u[1]);
    Block t1 = mat_mul(f[1], u[1]);
    u[1] = std::move(t1);

    v[0] = Block(m);
    v[1] = f[1];
    v[1] *= 1.0 / params.gamma;

    Block acc(m);
    for (int r = 2; r < n; ++r) {
        const std::size_t i = static_cast<std::size_t>(r);
        mul_into(h[i], u[i - 1], acc);
        mul_add_into(mat.a(r), u[i - 2], acc);
        u[i] = Block(m);
        mul_axpy(-1.0, f[i], acc, u[i]);
        if (r == n - 1) add_scaled(u[i], 1.0 / params.beta, f[i]);

        mul_into(h[i], v[i - 1], acc);
        mul_add_into(mat.a(r), v[i - 2], acc);
        v[i] = Block(m);
        mul_axpy(-1.0, f[i], acc, v[i]);
        if (r == n - 2) add_scaled(v[i], 1.0 / params.delta, f[i]);
    }

    // Back substitution turns the forward columns into the correction
    // columns of the ansatz. Every stage factor feeds these columns, so
    // checking them as they finalize also catches overflow that slipped
    // past the pivot tolerance as NaN.
    auto check_column = [](const Block& blk, int stage) {
        if (!blk.all_finite())
            throw SingularBlockError("factorization stage " + std::to_string(stage) +
                                         ": non-finite correction column (breakdown)",
                                     stage);
    };
    mul_sub_into(p[static_cast<std::size_t>(n - 2)], u[static_cast<std::size_t>(n - 1)],
                 u[static_cast<std::size_t>(n - 2)]);
    mul_sub_into(p[static_cast<std::size_t>(n - 2)], v[static_cast<std::size_t>(n - 1)],
                 v[static_cast<std::size_t>(n - 2)]);
    check_column(u[static_cast<std::size_t>(n - 1)], n);
    check_column(v[static_cast<std::size_t>(n - 1)], n);
    check_column(u[static_cast<std::size_t>(n - 2)], n - 1);
    check_column(v[static_cast<std::size_t>(n - 2)], n - 1);
    for (int r = n - 3; r >= 0; --r) {
        const std::size_t i = static_cast<std::size_t>(r);
        mul_sub_into(p[i], u[i + 1], u[i]);
        mul_sub_into(q[i], u[i + 2], u[i]);
        mul_sub_into(p[i], v[i + 1], v[i]);
        mul_sub_into(q[i], v[i + 2], v[i]);
        check_column(u[i], r + 1);
        check_column(v[i], r + 1);
    }

    // Stored factors must be finite; overflow can slip past the pivot
    // tolerance as NaN otherwise.
    for (int r = 0; r < n; ++r) {
        const std::size_t i = static_cast<std::size_t>(r);
        for (const Block* blk : {&f[i], &p[i], &q[i], &h[i], &u[i], &v[i]}) {
            if (!blk->empty() && !blk->all_finite())
                throw SingularBlockError(
                    "factorization stage " + std::to_string(r + 1) + ": non-finite factor (breakdown)",
                    r + 1);
        }
    }

    const Corners cb{mat.a(0), mat.b(0), mat.a(1), mat.d(n - 1), mat.e(n - 1), mat.e(n - 2)};
    const Block* uc[4] = {&u[0], &u[1], &u[static_cast<std::size_t>(n - 2)],
                          &u[static_cast<std::size_t>(n - 1)]};
    const Block* vc[4] = {&v[0], &v[1], &v[static_cast<std::size_t>(n - 2)],
                          &v[static_cast<std::size_t>(n - 1)]};
    fac.coupling_ = CouplingLu(build_coupling_matrix(m, params, cb, uc, vc));

    fac.factor_seconds_ = seconds_since(t0);
    return fac;
}

SolveReport solve(const Factorization& fac, const BlockVector& rhs) {
    const int m = fac.m();
    const int n = fac.n();
    if (rhs.m() != m || rhs.n() != n) throw UsageError("solve rhs dimension mismatch");

    const auto t0 = Clock::now();
    const auto& f = fac.f_;
    const auto& p = fac.p_;
    const auto& q = fac.q_;
    const auto& h = fac.h_;
    const auto& a = fac.a_;

    // Intermediate solution, then back substitution, in one buffer.
    BlockVector y(m, n);
    SmallVec t(static_cast<std::size_t>(m));

    matvec_into(f[0], rhs.block(0), y.block(0));
    std::copy(rhs.block(1).begin(), rhs.block(1).end(), t.begin());
    matvec_sub_into(h[1], y.block(0), t);
    matvec_into(f[1], t, y.block(1));
    for (int r = 2; r < n; ++r) {
        const std::size_t i = static_cast<std::size_t>(r);
        std::copy(rhs.block(r).begin(), rhs.block(r).end(), t.begin());
        matvec_sub_into(h[i], y.block(r - 1), t);
        matvec_sub_into(a[i], y.block(r - 2), t);
        matvec_into(f[i], t, y.block(r));
    }

    matvec_sub_into(p[static_cast<std::size_t>(n - 2)], y.block(n - 1), y.block(n - 2));
    for (int r = n - 3; r >= 0; --r) {
        const std::size_t i = static_cast<std::size_t>(r);
        matvec_sub_into(p[i], y.block(r + 1), y.block(r));
        matvec_sub_into(q[i], y.block(r + 2), y.block(r));
    }

    // Coupling unknowns, then the ansatz x = y - U u - V v.
    const Corners cb{a[0], fac.b1_, a[1], fac.dn_, fac.en_, fac.en1_};
    SmallVec uv = build_coupling_rhs(m, fac.params_, cb, y.block(0), y.block(1), y.block(n - 2),
                                     y.block(n - 1));
    fac.coupling_.solve(uv);
    SmallVec u(uv.begin(), uv.begin() + m);
    SmallVec v(uv.begin() + m, uv.end());

    BlockVector x = std::move(y);
    for (int r = 0; r < n; ++r) {
        matvec_sub_into(fac.u_[static_cast<std::size_t>(r)], u, x.block(r));
        matvec_sub_into(fac.v_[static_cast<std::size_t>(r)], v, x.block(r));
    }

    SolveReport report;
    report.solve_seconds = seconds_since(t0);
    report.factor_seconds = fac.factor_seconds_;
    report.x = std::move(x);
    report.u = std::move(u);
    report.v = std::move(v);
    return report;
}

std::vector<SolveReport> solve_multi(const Factorization& fac, std::span<const BlockVector> fs) {
    std::vector<SolveReport> reports;
    reports.reserve(fs.size());
    for (const BlockVector& f : fs) reports.push_back(solve(fac, f));
    return reports;
}

SolveReport solve_in_place(BlockPentaCyclic&& mat, BlockVector&& f, const SolverParams& params) {
    params.validate();
    const int m = mat.m();
    const int n = mat.n();
    if (f.m() != m || f.n() != n) throw UsageError("solve rhs dimension mismatch");

    const double lam = params.lambda();
    const double sig = params.sigma();
    const double inv_lam = params.alpha / params.beta;
    const double inv_sig = params.gamma / params.delta;

    Bands bd = std::move(mat).release_bands();
    auto& A = bd.a;
    auto& B = bd.b;
    auto& C = bd.c;
    auto& D = bd.d;
    auto& E = bd.e;
    BlockVector x = std::move(f);

    const auto t0 = Clock::now();
    const std::size_t nn = static_cast<std::size_t>(n);
    const Block b1 = B[0];  // the one corner block the overwrites destroy

    // Boundary fold, in place.
    sub_scaled(C[0], lam, D[nn - 1]);
    sub_scaled(D[0], lam, E[nn - 1]);
    sub_scaled(B[1], sig, E[nn - 2]);
    sub_scaled(D[nn - 2], inv_sig, A[1]);
    sub_scaled(B[nn - 1], inv_lam, A[0]);
    sub_scaled(C[nn - 1], inv_lam, b1);

    // Factorization overwrites: B holds the lower combinations, C the
    // stage inverses, D and E the upper factors. D_n, E_{n-1}, E_n keep
    // their original values for the coupling assembly.
    Block t1(m), t2(m), t3(m);

    t1 = invert_stage(C[0], 1);
    C[0] = std::move(t1);
    mul_into(C[0], D[0], t2);
    std::swap(D[0], t2);
    mul_into(C[0], E[0], t2);
    std::swap(E[0], t2);

    mul_sub_into(B[1], D[0], C[1]);
    t1 = invert_stage(C[1], 2);
    C[1] = std::move(t1);
    mul_sub_into(B[1], E[0], D[1]);
    mul_into(C[1], D[1], t2);
    std::swap(D[1], t2);
    mul_into(C[1], E[1], t2);
    std::swap(E[1], t2);

    for (int r = 2; r < n; ++r) {
        const std::size_t i = static_cast<std::size_t>(r);
        mul_sub_into(A[i], D[i - 2], B[i]);
        mul_sub_into(B[i], D[i - 1], C[i]);
        mul_sub_into(A[i], E[i - 2], C[i]);
        t1 = invert_stage(C[i], r + 1);
        C[i] = std::move(t1);
        if (r <= n - 2) {
            mul_sub_into(B[i], E[i - 1], D[i]);
            mul_into(C[i], D[i], t2);
            std::swap(D[i], t2);
        }
        if (r <= n - 3) {
            mul_into(C[i], E[i], t2);
            std::swap(E[i], t2);
        }
    }
    const double factor_seconds = seconds_since(t0);
    const auto t_solve = Clock::now();

    // Intermediate solution. f becomes g; the C column becomes the first
    // correction column, the B column the second.
    SmallVec tv(static_cast<std::size_t>(m));

    std::copy(x.block(0).begin(), x.block(0).end(), tv.begin());
    matvec_into(C[0], tv, x.block(0));
    C[0] *= 1.0 / params.alpha;
    B[0] = Block(m);

    t3 = C[1];
    std::copy(x.block(1).begin(), x.block(1).end(), tv.begin());
    matvec_sub_into(B[1], x.block(0), tv);
    matvec_into(t3, tv, x.block(1));
    mul_into(B[1], C[0], t1);
    t2 = Block(m);
    mul_axpy(-1.0, t3, t1, t2);
    C[1] = std::move(t2);
    B[1] = std::move(t3);
    B[1] *= 1.0 / params.gamma;

    for (int r = 2; r < n; ++r) {
        const std::size_t i = static_cast<std::size_t>(r);
        t3 = C[i];
        std::copy(x.block(r).begin(), x.block(r).end(), tv.begin());
        matvec_sub_into(B[i], x.block(r - 1), tv);
        matvec_sub_into(A[i], x.block(r - 2), tv);
        matvec_into(t3, tv, x.block(r));

        mul_into(B[i], C[i - 1], t1);
        mul_add_into(A[i], C[i - 2], t1);
        t2 = Block(m);
        mul_axpy(-1.0, t3, t1, t2);
        if (r == n - 1) add_scaled(t2, 1.0 / params.beta, t3);

        mul_into(B[i], B[i - 1], t1);
        mul_add_into(A[i], B[i - 2], t1);
        C[i] = std::move(t2);
        t2 = Block(m);
        mul_axpy(-1.0, t3, t1, t2);
        if (r == n - 2) add_scaled(t2, 1.0 / params.delta, t3);
        B[i] = std::move(t2);
    }

    // Back substitution for the rhs column and both correction columns.
    matvec_sub_into(D[nn - 2], x.block(n - 1), x.block(n - 2));
    mul_sub_into(D[nn - 2], C[nn - 1], C[nn - 2]);
    mul_sub_into(D[nn - 2], B[nn - 1], B[nn - 2]);
    for (int r = n - 3; r >= 0; --r) {
        const std::size_t i = static_cast<std::size_t>(r);
        matvec_sub_into(D[i], x.block(r + 1), x.block(r));
        matvec_sub_into(E[i], x.block(r + 2), x.block(r));
        mul_sub_into(D[i], C[i + 1], C[i]);
        mul_sub_into(E[i], C[i + 2], C[i]);
        mul_sub_into(D[i], B[i + 1], B[i]);
        mul_sub_into(E[i], B[i + 2], B[i]);
    }

    // Coupling system and final combination.
    const Corners cb{A[0], b1, A[1], D[nn - 1], E[nn - 1], E[nn - 2]};
    const Block* uc[4] = {&C[0], &C[1], &C[nn - 2], &C[nn - 1]};
    const Block* vc[4] = {&B[0], &B[1], &B[nn - 2], &B[nn - 1]};
    CouplingLu coupling(build_coupling_matrix(m, params, cb, uc, vc));

    SmallVec uv = build_coupling_rhs(m, params, cb, x.block(0), x.block(1), x.block(n - 2),
                                     x.block(n - 1));
    coupling.solve(uv);
    SmallVec u(uv.begin(), uv.begin() + m);
    SmallVec v(uv.begin() + m, uv.end());

    for (int r = 0; r < n; ++r) {
        const std::size_t i = static_cast<std::size_t>(r);
        matvec_sub_into(C[i], u, x.block(r));
        matvec_sub_into(B[i], v, x.block(r));
    }

    SolveReport report;
    report.solve_seconds = seconds_since(t_solve);
    report.factor_seconds = factor_seconds;
    report.x = std::move(x);
    report.u = std::move(u);
    report.v = std::move(v);
    return report;
}

}  // namespace cbpenta
