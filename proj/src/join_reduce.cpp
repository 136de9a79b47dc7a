#include "figaro/join_reduce.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "figaro/headtail.hpp"

namespace figaro {

Table::Table(Matrix data) : data_(std::move(data)) {}

Table::Table(Matrix data, std::vector<std::int64_t> keys) : data_(std::move(data)), keys_(std::move(keys)) {
    if (keys_->size() != data_.rows()) {
        throw std::invalid_argument("key column has " + std::to_string(keys_->size()) + " entries for " +
                                    std::to_string(data_.rows()) + " rows");
    }
    auto it = std::ranges::is_sorted_until(*keys_);
    if (it != keys_->end()) {
        throw std::invalid_argument("keys are not sorted: row " + std::to_string(it - keys_->begin()));
    }
}

namespace {

// Writes the reduction of one (left block, right block) pair into `out`
// starting at row `row0`. Returns the layout it wrote.
GroupBlock write_group(const RowBlock& left, const RowBlock& right, Matrix& out, std::size_t row0,
                       std::optional<std::int64_t> key, unsigned threads) {
    const std::size_t m1 = left.rows;
    const std::size_t m2 = right.rows;
    const std::size_t n1 = left.cols;
    const double sqrt_m1 = std::sqrt(static_cast<double>(m1));
    const double sqrt_m2 = std::sqrt(static_cast<double>(m2));

    Scratch head_row(right.cols);
    head_tail_into(right, {head_row, &out, row0 + m1, n1, sqrt_m1}, threads);

    for (std::size_t i = 0; i < m1; ++i) {
        auto dst = out.row(row0 + i);
        for (std::size_t j = 0; j < n1; ++j) dst[j] = sqrt_m2 * left(i, j);
        std::ranges::copy(head_row, dst.begin() + static_cast<std::ptrdiff_t>(n1));
    }
    // Bottom-left block stays at the zero the output was initialised with.
    return {key, row0, row0 + m1, row0 + m1 + m2 - 1, m1, m2};
}

}  // namespace

ReducedMatrix reduce_cartesian(const Matrix& a, const Matrix& b, unsigned threads) {
    if (a.rows() == 0 || b.rows() == 0) throw std::invalid_argument("reduce_cartesian: input matrix has no rows");
    ReducedMatrix r;
    r.n1 = a.cols();
    r.n2 = b.cols();
    r.matrix = Matrix(a.rows() + b.rows() - 1, a.cols() + b.cols());
    r.groups.push_back(write_group(RowBlock::of(a), RowBlock::of(b), r.matrix, 0, std::nullopt, threads));
    return r;
}

namespace {

struct KeyRun {
    std::int64_t key;
    std::size_t left_begin, left_end, right_begin, right_end;
};

std::vector<KeyRun> matching_runs(const std::vector<std::int64_t>& lk, const std::vector<std::int64_t>& rk) {
    std::vector<KeyRun> runs;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < lk.size() && j < rk.size()) {
        if (lk[i] < rk[j]) {
            ++i;
        } else if (rk[j] < lk[i]) {
            ++j;
        } else {
            const std::int64_t key = lk[i];
            std::size_t ie = i;
            while (ie < lk.size() && lk[ie] == key) ++ie;
            std::size_t je = j;
            while (je < rk.size() && rk[je] == key) ++je;
            runs.push_back({key, i, ie, j, je});
            i = ie;
            j = je;
        }
    }
    return runs;
}

}  // namespace

ReducedMatrix reduce_natural_join(const Table& a, const Table& b, unsigned threads) {
    if (!a.has_keys() || !b.has_keys()) throw std::invalid_argument("reduce_natural_join: both tables need keys");

    const auto runs = matching_runs(*a.keys(), *b.keys());
    std::size_t total_rows = 0;
    for (const auto& run : runs) total_rows += (run.left_end - run.left_begin) + (run.right_end - run.right_begin) - 1;

    ReducedMatrix r;
    r.n1 = a.cols();
    r.n2 = b.cols();
    r.matrix = Matrix(total_rows, a.cols() + b.cols());
    std::size_t row = 0;
    for (const auto& run : runs) {
        auto block = write_group(RowBlock::of_rows(a.data(), run.left_begin, run.left_end),
                                 RowBlock::of_rows(b.data(), run.right_begin, run.right_end), r.matrix, row, run.key,
                                 threads);
        row = block.end;
        r.groups.push_back(block);
    }
    return r;
}

ReducedMatrix reduce(const Table& a, const Table& b, unsigned threads) {
    if (a.has_keys() != b.has_keys()) {
        throw std::invalid_argument("either both tables carry join keys or neither does");
    }
    if (a.has_keys()) return reduce_natural_join(a, b, threads);
    return reduce_cartesian(a.data(), b.data(), threads);
}

}  // namespace figaro
