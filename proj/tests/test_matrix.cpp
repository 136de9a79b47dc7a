#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "figaro/matrix.hpp"
#include "test_support.hpp"

using namespace figaro;
using figaro::testing::naive_matmul;
using figaro::testing::random_matrix;

TEST_CASE("matmul by identity and by definition") {
    const Matrix a{{1, 2}, {3, 4}};
    CHECK(matmul(a, Matrix::identity(2)) == a);
    CHECK(matmul(Matrix{{1, 2}}, Matrix{{3}, {4}}) == Matrix{{11}});
}

TEST_CASE("matmul agrees with the naive triple loop") {
    std::mt19937_64 rng(11);
    const Matrix a = random_matrix(rng, 3, 4, -1, 1);
    const Matrix b = random_matrix(rng, 4, 2, -1, 1);
    CHECK(max_abs_diff(matmul(a, b), naive_matmul(a, b)) <= 1e-15);
}

TEST_CASE("matmul rejects mismatched shapes") {
    CHECK_THROWS_AS(matmul(Matrix(2, 3), Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("matmul is associative within rounding") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t p = testing::pick(rng, 1, 6), q = testing::pick(rng, 1, 6), r = testing::pick(rng, 1, 6),
                          s = testing::pick(rng, 1, 6);
        const Matrix a = random_matrix(rng, p, q, -1, 1);
        const Matrix b = random_matrix(rng, q, r, -1, 1);
        const Matrix c = random_matrix(rng, r, s, -1, 1);
        const Matrix left = matmul(matmul(a, b), c);
        const Matrix right = matmul(a, matmul(b, c));
        CHECK(max_abs_diff(left, right) <= 1e-10 * std::max(1.0, frobenius_norm(left)));
    }
}

TEST_CASE("gram examples") {
    CHECK(gram(Matrix{{1}, {3}}) == Matrix{{10}});
    CHECK(gram(Matrix::identity(3)) == Matrix::identity(3));
    CHECK(gram(Matrix(0, 3)) == Matrix(3, 3));

    std::mt19937_64 rng(3);
    const Matrix a = random_matrix(rng, 5, 3);
    CHECK(max_abs_diff(gram(a), naive_matmul(transpose(a), a)) <= 1e-14);
}

TEST_CASE("gram is bitwise symmetric") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix g = gram(random_matrix(rng, testing::pick(rng, 1, 30), testing::pick(rng, 1, 8), -1, 1));
        CHECK(g == transpose(g));
    }
}

TEST_CASE("max_abs_diff") {
    const Matrix m{{1, 2}, {3, 4}};
    CHECK(max_abs_diff(m, m) == 0.0);
    CHECK(max_abs_diff(Matrix{{1}}, Matrix{{1.5}}) == 0.5);

    Matrix bumped = m;
    for (double& v : bumped.data()) v += 1e-9;
    CHECK(max_abs_diff(m, bumped) <= 1e-9 * (1 + 1e-6));

    CHECK_THROWS_AS(max_abs_diff(Matrix(1, 2), Matrix(2, 1)), std::invalid_argument);
}

TEST_CASE("concatenation, slicing and scaling") {
    const Matrix a{{1, 2}, {3, 4}};
    const Matrix b{{5}, {6}};
    CHECK(hcat(a, b) == Matrix{{1, 2, 5}, {3, 4, 6}});
    CHECK(vcat(a, Matrix{{7, 8}}) == Matrix{{1, 2}, {3, 4}, {7, 8}});
    CHECK(vcat(Matrix(0, 2), a) == a);
    CHECK(vcat(a, Matrix()) == a);
    CHECK_THROWS(hcat(a, Matrix{{1}}));
    CHECK_THROWS(vcat(a, Matrix{{1, 2, 3}}));
    CHECK(row_slice(a, 1, 2) == Matrix{{3, 4}});
    CHECK(row_slice(a, 1, 1).rows() == 0);
    CHECK_THROWS(row_slice(a, 1, 3));
    CHECK(scale(a, 2.0) == Matrix{{2, 4}, {6, 8}});
    CHECK(transpose(hcat(a, b)) == Matrix{{1, 3}, {2, 4}, {5, 6}});
    CHECK(frobenius_norm(Matrix{{3, 4}}) == 5.0);
    CHECK(max_abs(Matrix{{-7, 2}}) == 7.0);
}

TEST_CASE("construction checks") {
    CHECK_THROWS_AS(Matrix(2, 2, std::vector<double>{1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS((Matrix{{1, 2}, {3}}), std::invalid_argument);
    CHECK(Matrix(0, 4).rows() == 0);
    CHECK(Matrix(0, 4).cols() == 4);
}

TEST_CASE("UpperTriangular enforces its shape") {
    CHECK_NOTHROW(UpperTriangular(Matrix{{1, 2}, {0, 3}}));
    CHECK_THROWS_AS(UpperTriangular(Matrix{{1, 2}, {1e-300, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(UpperTriangular(Matrix(2, 3)), std::invalid_argument);

    UpperTriangular r(Matrix{{-2, 5}, {0, 3}});
    r.negate_row(0);
    CHECK(r.matrix() == Matrix{{2, -5}, {0, 3}});
    CHECK(r.diagonal() == std::vector<double>{2, 3});
}

TEST_CASE("allocation scope sees matrix buffers") {
    AllocationScope scope;
    {
        Matrix big(1000, 10);
        CHECK(scope.largest_block_bytes() >= 1000 * 10 * sizeof(double));
    }
    CHECK(scope.peak_bytes() >= 1000 * 10 * sizeof(double));
    AllocationScope fresh;
    CHECK(fresh.peak_bytes() == 0);
}
