// R factors of the QR decomposition.

#pragma once

#include "figaro/join_reduce.hpp"
#include "figaro/matrix.hpp"

namespace figaro {

/// Householder QR returning only R (cols x cols). Inputs with fewer rows than
/// columns are padded with zero rows, giving trailing zero rows in R.
/// The diagonal signs are whatever the reflections produce; see canonicalize().
/// Throws std::invalid_argument if m has no columns.
UpperTriangular householder_r(Matrix m);

/// Same contract as householder_r, computed with Givens rotations that zero
/// one entry at a time. Kept as an independent reference implementation.
UpperTriangular givens_r(Matrix m);

/// Negates every row whose diagonal entry is negative. Rows with a zero
/// diagonal are left alone.
UpperTriangular canonicalize(UpperTriangular r);

/// Canonical R of the join of `a` and `b` without materializing the join:
/// reduce, then Householder on the reduced matrix.
UpperTriangular figaro_r(const Table& a, const Table& b, unsigned threads = 1);

}  // namespace figaro
