// QR head and tail operators.
//
// For an m x n matrix A the head is the 1 x n row (1/sqrt(m)) * sum_i A_i and
// row i (1-based, i < m) of the (m-1) x n tail is
//
//     (1/sqrt(i+1)) * (sqrt(i) * A_{i+1} - (1/sqrt(i)) * sum_{k<=i} A_k).
//
// Stacking head over tail is an orthogonal transform of A: it equals the
// first m rows of G*A for a sequence of Givens rotations G, so the Gram
// matrix A^T A is preserved.

#pragma once

#include <cstddef>
#include <span>

#include "figaro/matrix.hpp"

namespace figaro {

/// Throws std::invalid_argument when m has no rows.
Matrix head(const Matrix& m);

/// Returns the (rows-1) x cols tail; a single-row input gives a 0 x cols matrix.
/// Throws std::invalid_argument when m has no rows.
Matrix tail(const Matrix& m, unsigned threads = 1);

/// Head in row 0, tail in rows 1..rows-1, computed in one pass.
Matrix head_tail(const Matrix& m, unsigned threads = 1);

/// Row-major read-only view of a contiguous block of rows.
struct RowBlock {
    std::span<const double> data;
    std::size_t rows = 0;
    std::size_t cols = 0;

    static RowBlock of(const Matrix& m) noexcept { return {m.data(), m.rows(), m.cols()}; }
    static RowBlock of_rows(const Matrix& m, std::size_t begin, std::size_t end) noexcept {
        return {m.data().subspan(begin * m.cols(), (end - begin) * m.cols()), end - begin, m.cols()};
    }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data[i * cols + j]; }
};

/// Destination for the head/tail kernel: head goes to `head_out`
/// (length in.cols), tail row r goes to out(tail_row + r, tail_col + j)
/// multiplied by `tail_scale`. Tail rows are computed unscaled first, so a
/// scale of 1 reproduces tail() bit for bit.
struct HeadTailSink {
    std::span<double> head_out;
    Matrix* out = nullptr;
    std::size_t tail_row = 0;
    std::size_t tail_col = 0;
    double tail_scale = 1.0;
};

/// Runs the per-column recurrence on `in` and writes into `sink`. Columns are
/// split across `threads` workers; each column's arithmetic is independent of
/// the split, so results are identical for every thread count.
void head_tail_into(const RowBlock& in, const HeadTailSink& sink, unsigned threads = 1);

}  // namespace figaro
