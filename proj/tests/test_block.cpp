#include <doctest.h>

#include <random>
#include <vector>

#include "cbpenta/block.hpp"
#include "test_util.hpp"

using namespace cbpenta;
using test::max_abs_diff;

TEST_CASE("mat_mul identity and zero") {
    std::mt19937_64 eng(42);
    for (int m : {1, 2, 5}) {
        const Block x = test::rand_block(m, eng, -3.0, 3.0);
        CHECK(mat_mul(Block::identity(m), x) == x);
        CHECK(mat_mul(x, Block::identity(m)) == x);
        CHECK(mat_mul(Block(m), x) == Block(m));
    }
}

TEST_CASE("mat_mul 2x2 arithmetic") {
    const Block a(2, {1, 1, 1, -1});
    const Block expect(2, {2, 0, 0, 2});
    CHECK(mat_mul(a, a) == expect);
}

TEST_CASE("mat_mul dimension mismatch") {
    CHECK_THROWS_AS(mat_mul(Block(2), Block(3)), UsageError);
}

TEST_CASE("mat_mul associativity on random triples") {
    std::mt19937_64 eng(7);
    for (int rep = 0; rep < 40; ++rep) {
        const int m = 1 + static_cast<int>(eng() % 5);
        const Block a = test::rand_block(m, eng, -1.0, 1.0);
        const Block b = test::rand_block(m, eng, -1.0, 1.0);
        const Block c = test::rand_block(m, eng, -1.0, 1.0);
        const Block left = mat_mul(mat_mul(a, b), c);
        const Block right = mat_mul(a, mat_mul(b, c));
        const double scale = inf_norm(right);
        CHECK(max_abs_diff(left, right) <= 1e-12 * (scale > 0 ? scale : 1.0));
    }
}

TEST_CASE("mat_invert identity and diagonal") {
    CHECK(max_abs_diff(mat_invert(Block::identity(3)), Block::identity(3)) == 0.0);
    const Block d(2, {2, 0, 0, 4});
    CHECK(max_abs_diff(mat_invert(d), Block(2, {0.5, 0, 0, 0.25})) == 0.0);
}

TEST_CASE("mat_invert 2x2 closed form") {
    // adjugate of [[1,5],[5,1]] over det = -24
    const Block a(2, {1, 5, 5, 1});
    const Block expect(2, {-1.0 / 24, 5.0 / 24, 5.0 / 24, -1.0 / 24});
    CHECK(max_abs_diff(mat_invert(a), expect) <= 1e-15);
}

TEST_CASE("mat_invert requires pivoting") {
    const Block a(2, {0, 1, 1, 0});
    CHECK(max_abs_diff(mat_invert(a), a) == 0.0);
}

TEST_CASE("mat_invert singular blocks") {
    CHECK_THROWS_AS(mat_invert(Block(2, {1, 2, 2, 4})), SingularBlockError);
    CHECK_THROWS_AS(mat_invert(Block(3)), SingularBlockError);
}

TEST_CASE("mat_invert round trip") {
    std::mt19937_64 eng(11);
    for (int rep = 0; rep < 60; ++rep) {
        const int m = 1 + static_cast<int>(eng() % 8);
        const Block a = test::rand_spd_block(m, eng);
        const Block prod = mat_mul(mat_invert(a), a);
        CHECK(max_abs_diff(prod, Block::identity(m)) <= 1e-10);
    }
}

TEST_CASE("circulant scalar") {
    const double r[] = {3.5};
    const Block b = circulant(r);
    CHECK(b.dim() == 1);
    CHECK(b(0, 0) == 3.5);
}

TEST_CASE("circulant stiffness pattern") {
    const double row[] = {22, -8, 1, 1, 1, 1, -8};
    const Block c = circulant(row);
    for (int i = 0; i < 7; ++i) {
        CHECK(c(i, i) == 22.0);
        CHECK(c(i, (i + 1) % 7) == -8.0);
        CHECK(c((i + 1) % 7, i) == -8.0);
    }
    // all remaining entries are 1
    int ones = 0;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            if (c(i, j) == 1.0) ++ones;
    CHECK(ones == 7 * 7 - 7 - 14);
}

TEST_CASE("circulant constant off-diagonal pattern") {
    const double row[] = {-7.2, 1.8, 1.8, 1.8, 1.8, 1.8, 1.8};
    const Block b = circulant(row);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) CHECK(b(i, j) == (i == j ? -7.2 : 1.8));
}

TEST_CASE("circulant shift invariance") {
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int m : {2, 3, 6, 9}) {
        std::vector<double> row(static_cast<std::size_t>(m));
        for (double& v : row) v = dist(eng);
        const Block b = circulant(row);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) CHECK(b(i, j) == b((i + 1) % m, (j + 1) % m));
    }
}

TEST_CASE("circulant of palindromic-after-head row is symmetric") {
    // row r with r[q] == r[m-q] for q = 1..m-1
    const double row[] = {4.0, -1.5, 0.25, 0.25, -1.5};
    const Block b = circulant(row);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(b(i, j) == b(j, i));
}

TEST_CASE("inf_norm_vec") {
    CHECK(inf_norm_vec(std::vector<double>{}) == 0.0);
    CHECK(inf_norm_vec(std::vector<double>{0, 0, 0}) == 0.0);
    CHECK(inf_norm_vec(std::vector<double>{1, -3, 2}) == 3.0);
}

TEST_CASE("moved-from blocks are empty and reusable") {
    Block a(2, {1, 2, 3, 4});
    Block b = std::move(a);
    CHECK(a.dim() == 0);
    CHECK(b.dim() == 2);

    // writing into a moved-from destination must reallocate
    Block dst(3);
    Block sink = std::move(dst);
    mul_into(b, Block::identity(2), dst);
    CHECK(dst == b);
    CHECK(sink.dim() == 3);

    a = Block(1, {7});
    CHECK(a(0, 0) == 7.0);
}

TEST_CASE("block constructors validate") {
    CHECK_THROWS_AS(Block(0), UsageError);
    CHECK_THROWS_AS(Block(2, {1, 2, 3}), UsageError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Block(2, {1, 2, 3, inf}), UsageError);
}
