// Dense row-major matrices and the helpers shared by every other module.

#pragma once

#include <atomic>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <memory>
#include <new>
#include <span>
#include <vector>

namespace figaro {

// ---------------------------------------------------------------------------
// Allocation accounting
// ---------------------------------------------------------------------------

/// Process-wide counters fed by every Matrix buffer. Used by the benchmark
/// harness and tests to bound the working memory of the factorized path.
struct AllocationCounters {
    std::atomic<std::size_t> live_bytes{0};
    std::atomic<std::size_t> peak_live_bytes{0};
    std::atomic<std::size_t> largest_block_bytes{0};
};

AllocationCounters& allocation_counters() noexcept;

/// Measures matrix allocations made while the scope is alive. Peak figures
/// are reported relative to the live bytes at construction.
class AllocationScope {
public:
    AllocationScope() noexcept;
    AllocationScope(const AllocationScope&) = delete;
    AllocationScope& operator=(const AllocationScope&) = delete;

    std::size_t peak_bytes() const noexcept;
    std::size_t largest_block_bytes() const noexcept;

private:
    std::size_t baseline_;
};

namespace detail {
void record_allocation(std::size_t bytes) noexcept;
void record_deallocation(std::size_t bytes) noexcept;
}  // namespace detail

template <typename T>
struct TrackingAllocator {
    using value_type = T;

    TrackingAllocator() noexcept = default;
    template <typename U>
    TrackingAllocator(const TrackingAllocator<U>&) noexcept {}

    T* allocate(std::size_t n) {
        if (n > std::numeric_limits<std::size_t>::max() / sizeof(T)) throw std::bad_array_new_length();
        T* p = std::allocator<T>{}.allocate(n);
        detail::record_allocation(n * sizeof(T));
        return p;
    }
    void deallocate(T* p, std::size_t n) noexcept {
        detail::record_deallocation(n * sizeof(T));
        std::allocator<T>{}.deallocate(p, n);
    }

    template <typename U>
    bool operator==(const TrackingAllocator<U>&) const noexcept { return true; }
};

/// Counted scratch vector for working buffers inside the kernels.
using Scratch = std::vector<double, TrackingAllocator<double>>;

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

class Matrix {
public:
    using Storage = Scratch;

    Matrix() = default;
    /// Zero-filled rows x cols matrix.
    Matrix(std::size_t rows, std::size_t cols);
    /// Copies `values` (row-major, length rows*cols).
    Matrix(std::size_t rows, std::size_t cols, std::span<const double> values);
    /// Row-wise literal; all rows must have the same length.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Storage data_;
};

Matrix transpose(const Matrix& a);

/// Standard product; throws std::invalid_argument when a.cols() != b.rows().
Matrix matmul(const Matrix& a, const Matrix& b);

/// A^T A. The upper triangle is computed and mirrored, so the result is
/// symmetric bit for bit. A 0 x n input yields the n x n zero matrix.
Matrix gram(const Matrix& a);

/// max |a_ij - b_ij|; throws std::invalid_argument on shape mismatch.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// max |a_ij|, 0 for an empty matrix.
double max_abs(const Matrix& a) noexcept;

double frobenius_norm(const Matrix& a) noexcept;

/// [a | b]; row counts must agree.
Matrix hcat(const Matrix& a, const Matrix& b);

/// [a ; b]; column counts must agree unless one side has no rows.
Matrix vcat(const Matrix& a, const Matrix& b);

Matrix scale(const Matrix& a, double factor);

/// Copy of rows [begin, end).
Matrix row_slice(const Matrix& a, std::size_t begin, std::size_t end);

// ---------------------------------------------------------------------------
// UpperTriangular
// ---------------------------------------------------------------------------

/// Square matrix whose strictly-lower entries are exactly zero.
class UpperTriangular {
public:
    /// Throws std::invalid_argument unless `m` is square with an exactly
    /// zero strict lower triangle.
    explicit UpperTriangular(Matrix m);

    static UpperTriangular zeros(std::size_t n);

    std::size_t size() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
    std::vector<double> diagonal() const;

    /// Negates row i (keeps the triangle intact).
    void negate_row(std::size_t i) noexcept;

private:
    Matrix m_;
};

}  // namespace figaro
