#include "cbpenta/block.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace cbpenta {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw UsageError(what);
}

}  // namespace

Block::Block(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0.0) {
    require(dim >= 1, "block dimension must be >= 1");
}

Block::Block(int dim, std::initializer_list<double> entries) : Block(dim) {
    require(entries.size() == a_.size(), "block entry count must be dim*dim");
    std::copy(entries.begin(), entries.end(), a_.begin());
    require(all_finite(), "block entries must be finite");
}

Block Block::identity(int dim) {
    Block b(dim);
    for (int i = 0; i < dim; ++i) b(i, i) = 1.0;
    return b;
}

bool Block::all_finite() const noexcept {
    return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

Block& Block::operator+=(const Block& rhs) {
    require(dim_ == rhs.dim_, "block dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

Block& Block::operator-=(const Block& rhs) {
    require(dim_ == rhs.dim_, "block dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
    return *this;
}

Block& Block::operator*=(double s) noexcept {
    for (double& v : a_) v *= s;
    return *this;
}

void mul_into(const Block& a, const Block& b, Block& out) {
    const int m = a.dim();
    if (out.dim() != m) out = Block(m);
    double* o = out.data();
    std::fill(o, o + static_cast<std::size_t>(m) * m, 0.0);
    const double* pa = a.data();
    const double* pb = b.data();
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < m; ++k) {
            const double aik = pa[i * m + k];
            const double* brow = pb + k * m;
            double* orow = o + i * m;
            for (int j = 0; j < m; ++j) orow[j] += aik * brow[j];
        }
    }
}

void mul_add_into(const Block& a, const Block& b, Block& acc) {
    const int m = a.dim();
    const double* pa = a.data();
    const double* pb = b.data();
    double* o = acc.data();
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < m; ++k) {
            const double aik = pa[i * m + k];
            const double* brow = pb + k * m;
            double* orow = o + i * m;
            for (int j = 0; j < m; ++j) orow[j] += aik * brow[j];
        }
    }
}

void mul_sub_into(const Block& a, const Block& b, Block& acc) {
    const int m = a.dim();
    const double* pa = a.data();
    const double* pb = b.data();
    double* o = acc.data();
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < m; ++k) {
            const double aik = pa[i * m + k];
            const double* brow = pb + k * m;
            double* orow = o + i * m;
            for (int j = 0; j < m; ++j) orow[j] -= aik * brow[j];
        }
    }
}

Block mat_mul(const Block& a, const Block& b) {
    require(a.dim() == b.dim(), "block dimension mismatch in mat_mul");
    Block out(a.dim());
    mul_into(a, b, out);
    return out;
}

Block mat_invert(const Block& a, double pivot_tol) {
    const int m = a.dim();
    require(m >= 1, "cannot invert an empty block");

    const double scale = inf_norm(a);
    const double tol = pivot_tol * scale;

    Block work = a;
    Block inv = Block::identity(m);

    // Gauss-Jordan with row pivoting on [work | inv].
    for (int col = 0; col < m; ++col) {
        int piv = col;
        double best = std::abs(work(col, col));
        for (int r = col + 1; r < m; ++r) {
            const double v = std::abs(work(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best <= tol) {
            throw SingularBlockError("singular block: pivot " + std::to_string(best) +
                                     " at column " + std::to_string(col + 1));
        }
        if (piv != col) {
            for (int j = 0; j < m; ++j) {
                std::swap(work(col, j), work(piv, j));
                std::swap(inv(col, j), inv(piv, j));
            }
        }
        const double d = 1.0 / work(col, col);
        for (int j = 0; j < m; ++j) {
            work(col, j) *= d;
            inv(col, j) *= d;
        }
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            const double f = work(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < m; ++j) {
                work(r, j) -= f * work(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

Block circulant(std::span<const double> first_row) {
    const int m = static_cast<int>(first_row.size());
    require(m >= 1, "circulant first row must be nonempty");
    Block b(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) b(i, j) = first_row[static_cast<std::size_t>(((j - i) % m + m) % m)];
    return b;
}

void matvec_into(const Block& a, std::span<const double> x, std::span<double> y) {
    const int m = a.dim();
    const double* pa = a.data();
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) s += pa[i * m + j] * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
}

void matvec_add_into(const Block& a, std::span<const double> x, std::span<double> y) {
    const int m = a.dim();
    const double* pa = a.data();
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) s += pa[i * m + j] * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] += s;
    }
}

void matvec_sub_into(const Block& a, std::span<const double> x, std::span<double> y) {
    const int m = a.dim();
    const double* pa = a.data();
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) s += pa[i * m + j] * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] -= s;
    }
}

double inf_norm_vec(std::span<const double> v) noexcept {
    double best = 0.0;
    for (double x : v) best = std::max(best, std::abs(x));
    return best;
}

double inf_norm(const Block& a) noexcept {
    const int m = a.dim();
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
        double row = 0.0;
        for (int j = 0; j < m; ++j) row += std::abs(a(i, j));
        best = std::max(best, row);
    }
    return best;
}

}  // namespace cbpenta
