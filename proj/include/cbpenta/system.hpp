#pragma once

#include <span>
#include <vector>

#include "cbpenta/block.hpp"

namespace cbpenta {

/// Length-n sequence of m-vectors stored flat (block k occupies
/// entries [k*m, (k+1)*m)). Block indices are 0-based in code; the
/// file formats and documentation use the 1-based convention.
class BlockVector {
public:
    BlockVector() = default;
    BlockVector(int m, int n);
    BlockVector(int m, int n, std::vector<double> values);

    static BlockVector ones(int m, int n);

    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }

    std::span<double> block(int k) noexcept {
        return {data_.data() + static_cast<std::size_t>(k) * m_, static_cast<std::size_t>(m_)};
    }
    std::span<const double> block(int k) const noexcept {
        return {data_.data() + static_cast<std::size_t>(k) * m_, static_cast<std::size_t>(m_)};
    }

    std::span<double> flat() noexcept { return data_; }
    std::span<const double> flat() const noexcept { return data_; }

    bool all_finite() const noexcept;

    friend bool operator==(const BlockVector&, const BlockVector&) = default;

private:
    int m_ = 0, n_ = 0;
    std::vector<double> data_;
};

/// The five bands of a cyclic block penta-diagonal matrix, each a
/// length-n sequence of m-by-m blocks.
struct Bands {
    std::vector<Block> a, b, c, d, e;
};

/// Cyclic block penta-diagonal matrix: block row k (1-based) holds
/// A_k, B_k, C_k, D_k, E_k at block columns k-2 .. k+2 wrapped mod n,
/// so A_1, B_1, A_2 sit in the top-right corner and E_{n-1}, D_n, E_n
/// in the bottom-left. Immutable after construction; rvalues can
/// release their band storage for in-place consumption.
class BlockPentaCyclic {
public:
    BlockPentaCyclic() = default;

    /// All-zero blocks. Requires m >= 1 and n >= 5.
    BlockPentaCyclic(int m, int n);

    /// Validates sizes, per-block dimensions, and entry finiteness.
    /// n >= 5 is required: at n = 4 the corner blocks would collide
    /// with the band blocks and the layout is ambiguous.
    static BlockPentaCyclic from_bands(Bands bands);

    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }

    const Block& a(int k) const noexcept { return bands_.a[static_cast<std::size_t>(k)]; }
    const Block& b(int k) const noexcept { return bands_.b[static_cast<std::size_t>(k)]; }
    const Block& c(int k) const noexcept { return bands_.c[static_cast<std::size_t>(k)]; }
    const Block& d(int k) const noexcept { return bands_.d[static_cast<std::size_t>(k)]; }
    const Block& e(int k) const noexcept { return bands_.e[static_cast<std::size_t>(k)]; }

    /// Moves the band storage out; only callable on rvalues.
    Bands release_bands() && { return std::move(bands_); }

private:
    int m_ = 0, n_ = 0;
    Bands bands_;
};

/// Row-major dense matrix used by the dense expansion and the reference
/// solver.
struct DenseMatrix {
    int rows = 0, cols = 0;
    std::vector<double> v;

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int i, int j) noexcept { return v[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const noexcept { return v[static_cast<std::size_t>(i) * cols + j]; }
};

/// Default cap on n*m for dense expansion.
inline constexpr int kDenseGuard = 4096;

/// y_k = A_k x_{k-2} + B_k x_{k-1} + C_k x_k + D_k x_{k+1} + E_k x_{k+2},
/// indices wrapped cyclically.
BlockVector matvec(const BlockPentaCyclic& mat, const BlockVector& x);

/// Dense (n*m)-by-(n*m) expansion. Throws UsageError when n*m exceeds
/// max_dim (a guard against accidental quadratic blowups).
DenseMatrix to_dense(const BlockPentaCyclic& mat, int max_dim = kDenseGuard);

/// ||f - A x||_inf over all n*m scalar entries.
double residual_inf(const BlockPentaCyclic& mat, const BlockVector& x, const BlockVector& f);

}  // namespace cbpenta
