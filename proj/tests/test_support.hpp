// Test-only helpers: random inputs and oracles that do not share code with
// the library paths they check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "figaro/join_reduce.hpp"
#include "figaro/matrix.hpp"

namespace figaro::testing {

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double lo = 0.0,
                            double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Matrix m(rows, cols);
    for (double& v : m.data()) v = dist(rng);
    return m;
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Triple loop over (i, j, k), the textbook definition.
inline Matrix naive_matmul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    }
    return c;
}

/// A^T A by explicit column dot products.
inline Matrix naive_gram(const Matrix& a) {
    Matrix g(a.cols(), a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < a.rows(); ++r) s += a(r, i) * a(r, j);
            g(i, j) = s;
        }
    }
    return g;
}

/// Laplace expansion along the first row; fine for n <= 6.
inline double cofactor_det(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1.0;
    if (n == 1) return m(0, 0);
    double det = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        Matrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == c) continue;
                minor(i - 1, cc++) = m(i, j);
            }
        }
        det += (c % 2 ? -1.0 : 1.0) * m(0, c) * cofactor_det(minor);
    }
    return det;
}

/// Natural join by nested loops over every (left row, right row) pair.
inline Matrix nested_loop_join(const Table& a, const Table& b) {
    std::vector<double> values;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            if ((*a.keys())[i] != (*b.keys())[j]) continue;
            for (double v : a.data().row(i)) values.push_back(v);
            for (double v : b.data().row(j)) values.push_back(v);
            ++rows;
        }
    }
    return Matrix(rows, a.cols() + b.cols(), values);
}

/// Random keyed pair with `groups` candidate key values, 0..max_size rows per
/// side per key (so some keys appear on one side only).
inline std::pair<Table, Table> random_keyed_pair(std::mt19937_64& rng, std::size_t groups, std::size_t max_size,
                                                 std::size_t n1, std::size_t n2) {
    std::vector<std::int64_t> lk;
    std::vector<std::int64_t> rk;
    for (std::size_t g = 0; g < groups; ++g) {
        const auto key = static_cast<std::int64_t>(3 * g + pick(rng, 0, 2));
        lk.insert(lk.end(), pick(rng, 0, max_size), key);
        rk.insert(rk.end(), pick(rng, 0, max_size), key);
    }
    return {Table(random_matrix(rng, lk.size(), n1), lk), Table(random_matrix(rng, rk.size(), n2), rk)};
}

inline double rel_scale(const Matrix& m) { return std::max(1.0, max_abs(m)); }

}  // namespace figaro::testing
