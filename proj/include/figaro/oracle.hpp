// Brute-force reference path: materialize the join, then decompose it.
// This is both the correctness oracle and the benchmark baseline, so it pays
// the full m1*m2 cost on purpose.

#pragma once

#include "figaro/join_reduce.hpp"
#include "figaro/matrix.hpp"
#include "figaro/svd.hpp"

namespace figaro {

/// Row (i, j) of the result, at index i*m2 + j, is [a_i | b_j].
Matrix materialize_cartesian(const Matrix& a, const Matrix& b);

/// One row [a-data | b-data] per matching key pair, ordered by key, then left
/// row, then right row. Throws if either table lacks keys.
Matrix materialize_natural_join(const Table& a, const Table& b);

/// Cartesian product or natural join, following Table::has_keys().
Matrix materialize_join(const Table& a, const Table& b);

/// Canonical Householder R of an explicit join matrix.
UpperTriangular baseline_r(Matrix j);

SvdResult baseline_svd(Matrix j, bool want_vectors);

/// Determinant by LU with partial pivoting. Throws on non-square input.
double det_lu(Matrix j);

/// How the factorized and baseline R factors were compared.
enum class RComparison {
    /// Entrywise; R is unique up to the canonical sign choice.
    Entrywise,
    /// Via R^T R, because a zero pivot followed by nonzero entries leaves R
    /// non-unique (rank-deficient leading columns).
    Gram,
};

struct RDifference {
    RComparison mode = RComparison::Entrywise;
    /// max-abs difference divided by max(1, max-abs of the reference).
    double relative = 0.0;
};

/// Compares two canonical R factors of the same join. `reference` decides
/// whether R is unique: if some row has a diagonal below `pivot_tol` times
/// max(1, |reference|_max) yet a larger off-diagonal entry, Grams are compared.
RDifference compare_r(const UpperTriangular& candidate, const UpperTriangular& reference, double pivot_tol = 1e-9);

}  // namespace figaro
