#include "cbpenta/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace cbpenta {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw UsageError(what);
}

void check_band(const std::vector<Block>& band, int m, std::size_t n, const char* name) {
    require(band.size() == n, std::string("band ") + name + " must have n blocks");
    for (const Block& blk : band) {
        require(blk.dim() == m, std::string("band ") + name + " has a block of wrong dimension");
        require(blk.all_finite(), std::string("band ") + name + " has a non-finite entry");
    }
}

}  // namespace

BlockVector::BlockVector(int m, int n)
    : m_(m), n_(n), data_(static_cast<std::size_t>(m) * n, 0.0) {
    require(m >= 1, "block vector m must be >= 1");
    require(n >= 1, "block vector n must be >= 1");
}

BlockVector::BlockVector(int m, int n, std::vector<double> values) : BlockVector(m, n) {
    require(values.size() == data_.size(), "block vector values must have n*m entries");
    data_ = std::move(values);
}

BlockVector BlockVector::ones(int m, int n) {
    BlockVector v(m, n);
    for (double& x : v.data_) x = 1.0;
    return v;
}

bool BlockVector::all_finite() const noexcept {
    for (double x : data_)
        if (!std::isfinite(x)) return false;
    return true;
}

BlockPentaCyclic::BlockPentaCyclic(int m, int n) : m_(m), n_(n) {
    require(m >= 1, "m must be >= 1");
    require(n >= 5, "n must be >= 5");
    const std::size_t count = static_cast<std::size_t>(n);
    bands_.a.assign(count, Block(m));
    bands_.b.assign(count, Block(m));
    bands_.c.assign(count, Block(m));
    bands_.d.assign(count, Block(m));
    bands_.e.assign(count, Block(m));
}

BlockPentaCyclic BlockPentaCyclic::from_bands(Bands bands) {
    require(!bands.c.empty(), "bands must be nonempty");
    const int m = bands.c.front().dim();
    const std::size_t n = bands.c.size();
    require(n >= 5, "n must be >= 5");
    check_band(bands.a, m, n, "A");
    check_band(bands.b, m, n, "B");
    check_band(bands.c, m, n, "C");
    check_band(bands.d, m, n, "D");
    check_band(bands.e, m, n, "E");

    BlockPentaCyclic mat;
    mat.m_ = m;
    mat.n_ = static_cast<int>(n);
    mat.bands_ = std::move(bands);
    return mat;
}

BlockVector matvec(const BlockPentaCyclic& mat, const BlockVector& x) {
    const int m = mat.m();
    const int n = mat.n();
    require(x.m() == m && x.n() == n, "matvec dimension mismatch");

    BlockVector y(m, n);
    for (int k = 0; k < n; ++k) {
        auto out = y.block(k);
        matvec_add_into(mat.a(k), x.block((k - 2 + n) % n), out);
        matvec_add_into(mat.b(k), x.block((k - 1 + n) % n), out);
        matvec_add_into(mat.c(k), x.block(k), out);
        matvec_add_into(mat.d(k), x.block((k + 1) % n), out);
        matvec_add_into(mat.e(k), x.block((k + 2) % n), out);
    }
    return y;
}

DenseMatrix to_dense(const BlockPentaCyclic& mat, int max_dim) {
    const int m = mat.m();
    const int n = mat.n();
    const long long dim = static_cast<long long>(n) * m;
    require(dim <= max_dim, "dense expansion guard exceeded: n*m = " + std::to_string(dim) +
                                " > " + std::to_string(max_dim));

    DenseMatrix dense(static_cast<int>(dim), static_cast<int>(dim));
    auto place = [&](int row, int col, const Block& blk) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) dense.at(row * m + i, col * m + j) = blk(i, j);
    };
    for (int k = 0; k < n; ++k) {
        place(k, (k - 2 + n) % n, mat.a(k));
        place(k, (k - 1 + n) % n, mat.b(k));
        place(k, k, mat.c(k));
        place(k, (k + 1) % n, mat.d(k));
        place(k, (k + 2) % n, mat.e(k));
    }
    return dense;
}

double residual_inf(const BlockPentaCyclic& mat, const BlockVector& x, const BlockVector& f) {
    require(f.m() == mat.m() && f.n() == mat.n(), "residual dimension mismatch");
    BlockVector ax = matvec(mat, x);
    double best = 0.0;
    auto fv = f.flat();
    auto av = ax.flat();
    for (std::size_t i = 0; i < fv.size(); ++i)
        best = std::max(best, std::abs(fv[i] - av[i]));
    return best;
}

}  // namespace cbpenta
