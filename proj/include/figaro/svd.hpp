// Singular values and right singular vectors via the R factor.

#pragma once

#include <optional>
#include <vector>

#include "figaro/join_reduce.hpp"
#include "figaro/matrix.hpp"

namespace figaro {

struct SvdResult {
    /// Non-increasing, non-negative; one entry per column.
    std::vector<double> values;
    /// Column j is the right singular vector for values[j].
    std::optional<Matrix> right_vectors;
};

struct JacobiOptions {
    /// A column pair counts as orthogonal once |p.q| / (|p| |q|) drops below this.
    double tolerance = 1e-14;
    int max_sweeps = 64;
};

/// One-sided Jacobi SVD of an upper triangular factor. Since R^T R = J^T J,
/// the singular values and right vectors of R are those of J.
/// Throws std::runtime_error if the sweeps do not converge within the cap.
SvdResult svd_of_r(const UpperTriangular& r, bool want_vectors, const JacobiOptions& options = {});

/// figaro_r followed by svd_of_r.
SvdResult figaro_svd(const Table& a, const Table& b, bool want_vectors, unsigned threads = 1);

}  // namespace figaro
