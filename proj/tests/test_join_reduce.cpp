#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "figaro/join_reduce.hpp"
#include "figaro/oracle.hpp"
#include "test_support.hpp"

using namespace figaro;
using figaro::testing::naive_gram;
using figaro::testing::random_matrix;

namespace {

const double kSqrt2 = std::sqrt(2.0);

void check_gram_equal(const Matrix& reduced, const Matrix& join) {
    const Matrix g = naive_gram(join);
    CHECK(max_abs_diff(naive_gram(reduced), g) <= 1e-10 * std::max(1.0, max_abs(g)));
}

void check_structural_zeros(const ReducedMatrix& r) {
    for (const auto& g : r.groups) {
        for (std::size_t i = g.top_end; i < g.end; ++i) {
            for (std::size_t j = 0; j < r.n1; ++j) CHECK(r.matrix(i, j) == 0.0);
        }
    }
}

}  // namespace

TEST_CASE("Table validates keys") {
    CHECK_NOTHROW(Table(Matrix(3, 1), {1, 1, 2}));
    CHECK_THROWS_AS(Table(Matrix(3, 1), {2, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Table(Matrix(3, 1), {1, 2}), std::invalid_argument);
    CHECK_FALSE(Table(Matrix(3, 1)).has_keys());
}

TEST_CASE("reduce_cartesian worked example") {
    const Matrix a{{1}, {2}};
    const Matrix b{{3}, {4}};
    const ReducedMatrix r = reduce_cartesian(a, b);
    const Matrix expected{{kSqrt2, 7 / kSqrt2}, {2 * kSqrt2, 7 / kSqrt2}, {0, 1}};
    CHECK(max_abs_diff(r.matrix, expected) <= 1e-15);
    CHECK(naive_gram(r.matrix)(0, 0) == doctest::Approx(10));
    CHECK(naive_gram(r.matrix)(0, 1) == doctest::Approx(21));
    CHECK(naive_gram(r.matrix)(1, 1) == doctest::Approx(50));
    check_gram_equal(r.matrix, Matrix{{1, 3}, {1, 4}, {2, 3}, {2, 4}});
    REQUIRE(r.groups.size() == 1);
    CHECK(r.groups[0].top_end == 2);
    CHECK(r.groups[0].end == 3);
    CHECK_FALSE(r.groups[0].key.has_value());
}

TEST_CASE("reduce_cartesian degenerate sides") {
    // m2 = 1: the tail is empty and head(B) = B.
    CHECK(reduce_cartesian(Matrix{{5}, {6}}, Matrix{{7}}).matrix == Matrix{{5, 7}, {6, 7}});

    // m1 = 1: sqrt(2) A on top, tail(B) unscaled below.
    const ReducedMatrix r = reduce_cartesian(Matrix{{1}}, Matrix{{3}, {4}});
    CHECK(max_abs_diff(r.matrix, Matrix{{kSqrt2, 7 / kSqrt2}, {0, 1 / kSqrt2}}) <= 1e-15);
    check_gram_equal(r.matrix, Matrix{{1, 3}, {1, 4}});

    CHECK_THROWS_AS(reduce_cartesian(Matrix(0, 2), Matrix{{1}}), std::invalid_argument);
    CHECK_THROWS_AS(reduce_cartesian(Matrix{{1}}, Matrix(0, 2)), std::invalid_argument);
}

TEST_CASE("reduce_natural_join examples") {
    SUBCASE("disjoint keys give an empty matrix") {
        const ReducedMatrix r = reduce_natural_join(Table(Matrix{{1}}, {1}), Table(Matrix{{2, 3}}, {2}));
        CHECK(r.matrix.rows() == 0);
        CHECK(r.matrix.cols() == 3);
        CHECK(r.groups.empty());
    }
    SUBCASE("a single shared key is the Cartesian reduction") {
        std::mt19937_64 rng(4);
        const Matrix a = random_matrix(rng, 4, 2);
        const Matrix b = random_matrix(rng, 3, 3);
        const ReducedMatrix grouped = reduce_natural_join(Table(a, {7, 7, 7, 7}), Table(b, {7, 7, 7}));
        CHECK(grouped.matrix == reduce_cartesian(a, b).matrix);
        CHECK(grouped.groups.at(0).key == 7);
    }
    SUBCASE("two groups") {
        const Table a(Matrix{{1}, {2}, {5}}, {1, 1, 2});
        const Table b(Matrix{{3}, {7}, {8}}, {1, 2, 2});
        const ReducedMatrix r = reduce_natural_join(a, b);
        const Matrix expected = vcat(reduce_cartesian(Matrix{{1}, {2}}, Matrix{{3}}).matrix,
                                     reduce_cartesian(Matrix{{5}}, Matrix{{7}, {8}}).matrix);
        CHECK(r.matrix == expected);
        CHECK(r.matrix.rows() == 4);
        check_gram_equal(r.matrix, Matrix{{1, 3}, {2, 3}, {5, 7}, {5, 8}});
        check_structural_zeros(r);
    }
    SUBCASE("keys are required") {
        CHECK_THROWS_AS(reduce_natural_join(Table(Matrix{{1}}), Table(Matrix{{1}}, {1})), std::invalid_argument);
        CHECK_THROWS_AS(reduce(Table(Matrix{{1}}), Table(Matrix{{1}}, {1})), std::invalid_argument);
    }
}

TEST_CASE("Gram equality over random Cartesian products") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t m1 = trial % 10 == 0 ? 1 : testing::pick(rng, 1, 12);
        const std::size_t m2 = trial % 10 == 1 ? 1 : testing::pick(rng, 1, 12);
        const Matrix a = random_matrix(rng, m1, testing::pick(rng, 1, 5));
        const Matrix b = random_matrix(rng, m2, testing::pick(rng, 1, 5));
        const ReducedMatrix r = reduce_cartesian(a, b);
        CHECK(r.matrix.rows() == m1 + m2 - 1);
        check_gram_equal(r.matrix, materialize_cartesian(a, b));
        check_structural_zeros(r);
    }
}

TEST_CASE("Gram equality over random natural joins") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n1 = testing::pick(rng, 1, 5);
        const std::size_t n2 = testing::pick(rng, 1, 5);
        auto [a, b] = testing::random_keyed_pair(rng, testing::pick(rng, 1, 5), 6, n1, n2);
        const ReducedMatrix r = reduce_natural_join(a, b);

        std::size_t expected_rows = 0;
        for (const auto& g : r.groups) {
            CHECK(g.end - g.begin == g.left_rows + g.right_rows - 1);
            expected_rows += g.left_rows + g.right_rows - 1;
        }
        CHECK(r.matrix.rows() == expected_rows);
        check_gram_equal(r.matrix, testing::nested_loop_join(a, b));
        check_structural_zeros(r);
    }
}

TEST_CASE("reduction is independent of the thread count") {
    std::mt19937_64 rng(8);
    auto [a, b] = testing::random_keyed_pair(rng, 4, 9, 3, 5);
    const Matrix sequential = reduce(a, b, 1).matrix;
    CHECK(reduce(a, b, 4).matrix == sequential);
}

TEST_CASE("reduction allocates in proportion to the inputs") {
    const std::size_t m = 20000;
    const std::size_t n = 4;
    std::mt19937_64 rng(1);
    const Matrix a = random_matrix(rng, m, n);
    const Matrix b = random_matrix(rng, m, n);

    AllocationScope scope;
    const ReducedMatrix r = reduce_cartesian(a, b);
    const std::size_t bound = ((m + m) * (n + n) + 4 * n) * sizeof(double);
    CHECK(scope.peak_bytes() <= bound);
    CHECK(scope.largest_block_bytes() <= (m + m) * (n + n) * sizeof(double));
    CHECK(r.matrix.rows() == 2 * m - 1);
}
