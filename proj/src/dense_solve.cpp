#include "cbpenta/dense_solve.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace cbpenta {

std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b) {
    const int n = a.rows;
    if (a.cols != n) throw UsageError("dense_solve needs a square matrix");
    if (static_cast<int>(b.size()) != n) throw UsageError("dense_solve rhs size mismatch");

    double scale = 0.0;
    for (double v : a.v) scale = std::max(scale, std::abs(v));
    const double tol = 1e2 * std::numeric_limits<double>::epsilon() * scale;

    // Forward elimination with partial pivoting.
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(a.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(a.at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best <= tol)
            throw SingularError("dense matrix singular at column " + std::to_string(col + 1));
        if (piv != col) {
            for (int j = col; j < n; ++j) std::swap(a.at(col, j), a.at(piv, j));
            std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(piv)]);
        }
        const double inv_piv = 1.0 / a.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = a.at(r, col) * inv_piv;
            if (f == 0.0) continue;
            for (int j = col + 1; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }

    // Back substitution.
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= a.at(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / a.at(i, i);
    }
    return x;
}

}  // namespace cbpenta
