// Reduction of a two-table join matrix to a small matrix with the same Gram
// matrix (and therefore the same R factor).
//
// For a Cartesian product A x B (m1 x n1 and m2 x n2) the reduced matrix has
// m1 + m2 - 1 rows:
//
//     [ sqrt(m2) * A_i | head(B) ]        i = 1..m1
//     [ 0              | sqrt(m1) * tail(B)_k ]   k = 1..m2-1
//
// A natural join applies the same construction independently to every key
// group present on both sides and stacks the results in ascending key order.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "figaro/matrix.hpp"

namespace figaro {

/// A relation: numeric data columns plus an optional join-key column that is
/// sorted non-decreasing. Keys never enter the numeric matrix.
class Table {
public:
    Table() = default;
    explicit Table(Matrix data);
    /// Throws std::invalid_argument if keys.size() != data.rows() or the keys
    /// are not sorted non-decreasing.
    Table(Matrix data, std::vector<std::int64_t> keys);

    const Matrix& data() const noexcept { return data_; }
    const std::optional<std::vector<std::int64_t>>& keys() const noexcept { return keys_; }
    bool has_keys() const noexcept { return keys_.has_value(); }
    std::size_t rows() const noexcept { return data_.rows(); }
    std::size_t cols() const noexcept { return data_.cols(); }

private:
    Matrix data_;
    std::optional<std::vector<std::int64_t>> keys_;
};

/// Row layout of one key group inside a ReducedMatrix: rows [begin, top_end)
/// hold the scaled left block, rows [top_end, end) the scaled right tail.
struct GroupBlock {
    std::optional<std::int64_t> key;  // empty for a keyless Cartesian product
    std::size_t begin = 0;
    std::size_t top_end = 0;
    std::size_t end = 0;
    std::size_t left_rows = 0;
    std::size_t right_rows = 0;
};

struct ReducedMatrix {
    Matrix matrix;
    std::vector<GroupBlock> groups;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
};

/// Throws std::invalid_argument if either input has no rows.
ReducedMatrix reduce_cartesian(const Matrix& a, const Matrix& b, unsigned threads = 1);

/// Throws std::invalid_argument if either table lacks keys.
ReducedMatrix reduce_natural_join(const Table& a, const Table& b, unsigned threads = 1);

/// Cartesian reduction when neither table has keys, natural-join reduction
/// when both do; mixing the two throws std::invalid_argument.
ReducedMatrix reduce(const Table& a, const Table& b, unsigned threads = 1);

}  // namespace figaro
