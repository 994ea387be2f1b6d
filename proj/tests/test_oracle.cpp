#include <doctest.h>

#include <random>
#include <vector>

#include "cbpenta/dense_solve.hpp"
#include "cbpenta/problems.hpp"
#include "test_util.hpp"

using namespace cbpenta;
using test::max_abs_diff;

namespace {

DenseMatrix rand_dominant(int n, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseMatrix a(n, n);
    for (double& v : a.v) v = dist(eng);
    for (int i = 0; i < n; ++i) a.at(i, i) += 2.0 * n;
    return a;
}

std::vector<double> apply(const DenseMatrix& a, const std::vector<double>& x) {
    std::vector<double> y(static_cast<std::size_t>(a.rows), 0.0);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) y[static_cast<std::size_t>(i)] += a.at(i, j) * x[static_cast<std::size_t>(j)];
    return y;
}

double dense_inf_norm(const DenseMatrix& a) {
    double best = 0.0;
    for (int i = 0; i < a.rows; ++i) {
        double row = 0.0;
        for (int j = 0; j < a.cols; ++j) row += std::abs(a.at(i, j));
        best = std::max(best, row);
    }
    return best;
}

}  // namespace

TEST_CASE("dense_solve identity") {
    DenseMatrix ident(4, 4);
    for (int i = 0; i < 4; ++i) ident.at(i, i) = 1.0;
    const std::vector<double> b{1, -2, 3, -4};
    CHECK(dense_solve(ident, b) == b);
}

TEST_CASE("dense_solve on the worked example") {
    const Problem p = worked_example();
    const std::vector<double> tens(10, 10.0);
    const std::vector<double> x = dense_solve(to_dense(p.mat), tens);
    for (double v : x) CHECK(std::abs(v - 1.0) <= 1e-12);
}

TEST_CASE("dense_solve residual on a random 30x30 system") {
    std::mt19937_64 eng(101);
    const DenseMatrix a = rand_dominant(30, eng);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    std::vector<double> b(30);
    for (double& v : b) v = dist(eng);

    const std::vector<double> x = dense_solve(a, b);
    const std::vector<double> ax = apply(a, x);
    double res = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) res = std::max(res, std::abs(b[i] - ax[i]));
    CHECK(res <= 1e-10 * (dense_inf_norm(a) * inf_norm_vec(x) + inf_norm_vec(b)));
}

TEST_CASE("dense_solve recovers known solutions up to 200x200") {
    std::mt19937_64 eng(202);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int n : {3, 17, 64, 200}) {
        const DenseMatrix a = rand_dominant(n, eng);
        std::vector<double> x0(static_cast<std::size_t>(n));
        for (double& v : x0) v = dist(eng);
        const std::vector<double> x = dense_solve(a, apply(a, x0));
        const double scale = inf_norm_vec(x0);
        CHECK(max_abs_diff(x, x0) <= 1e-9 * (scale > 0 ? scale : 1.0));
    }
}

TEST_CASE("dense_solve rejects singular and mismatched input") {
    DenseMatrix zero_row(3, 3);
    zero_row.at(0, 0) = 1.0;
    zero_row.at(2, 2) = 1.0;
    CHECK_THROWS_AS(dense_solve(zero_row, std::vector<double>(3, 1.0)), SingularError);

    DenseMatrix rect(3, 2);
    CHECK_THROWS_AS(dense_solve(rect, std::vector<double>(3, 1.0)), UsageError);
    DenseMatrix sq(3, 3);
    CHECK_THROWS_AS(dense_solve(sq, std::vector<double>(2, 1.0)), UsageError);
}
