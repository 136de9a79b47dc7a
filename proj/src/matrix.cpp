#include "figaro/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace figaro {

AllocationCounters& allocation_counters() noexcept {
    static AllocationCounters counters;
    return counters;
}

namespace detail {

namespace {
void raise_to(std::atomic<std::size_t>& target, std::size_t value) noexcept {
    std::size_t current = target.load(std::memory_order_relaxed);
    while (value > current && !target.compare_exchange_weak(current, value, std::memory_order_relaxed)) {
    }
}
}  // namespace

void record_allocation(std::size_t bytes) noexcept {
    auto& c = allocation_counters();
    const std::size_t live = c.live_bytes.fetch_add(bytes, std::memory_order_relaxed) + bytes;
    raise_to(c.peak_live_bytes, live);
    raise_to(c.largest_block_bytes, bytes);
}

void record_deallocation(std::size_t bytes) noexcept {
    allocation_counters().live_bytes.fetch_sub(bytes, std::memory_order_relaxed);
}

}  // namespace detail

AllocationScope::AllocationScope() noexcept {
    auto& c = allocation_counters();
    baseline_ = c.live_bytes.load(std::memory_order_relaxed);
    c.peak_live_bytes.store(baseline_, std::memory_order_relaxed);
    c.largest_block_bytes.store(0, std::memory_order_relaxed);
}

std::size_t AllocationScope::peak_bytes() const noexcept {
    const std::size_t peak = allocation_counters().peak_live_bytes.load(std::memory_order_relaxed);
    return peak > baseline_ ? peak - baseline_ : 0;
}

std::size_t AllocationScope::largest_block_bytes() const noexcept {
    return allocation_counters().largest_block_bytes.load(std::memory_order_relaxed);
}

// ---------------------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::span<const double> values)
    : rows_(rows), cols_(cols), data_(values.begin(), values.end()) {
    if (values.size() != rows * cols) {
        throw std::invalid_argument("matrix data length " + std::to_string(values.size()) + " does not match " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : rows_(rows.size()) {
    cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    }
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    Matrix c(a.rows(), b.cols());
    // i-k-j order keeps both b and c accesses sequential.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
        }
    }
    return c;
}

Matrix gram(const Matrix& a) {
    const std::size_t n = a.cols();
    Matrix g(n, n);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto x = a.row(r);
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = x[i];
            if (xi == 0.0) continue;
            auto gi = g.row(i);
            for (std::size_t j = i; j < n; ++j) gi[j] += xi * x[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
    }
    return g;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
    }
    double worst = 0.0;
    auto x = a.data();
    auto y = b.data();
    for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(x[k] - y[k]));
    return worst;
}

double max_abs(const Matrix& a) noexcept {
    double worst = 0.0;
    for (double v : a.data()) worst = std::max(worst, std::abs(v));
    return worst;
}

double frobenius_norm(const Matrix& a) noexcept {
    double sum = 0.0;
    for (double v : a.data()) sum += v * v;
    return std::sqrt(sum);
}

Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row counts differ");
    Matrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        std::ranges::copy(a.row(i), out.begin());
        std::ranges::copy(b.row(i), out.begin() + static_cast<std::ptrdiff_t>(a.cols()));
    }
    return c;
}

Matrix vcat(const Matrix& a, const Matrix& b) {
    if (a.rows() == 0 && a.cols() != b.cols()) return b;
    if (b.rows() == 0 && a.cols() != b.cols()) return a;
    if (a.cols() != b.cols()) throw std::invalid_argument("vcat: column counts differ");
    Matrix c(a.rows() + b.rows(), a.cols());
    std::ranges::copy(a.data(), c.data().begin());
    std::ranges::copy(b.data(), c.data().begin() + static_cast<std::ptrdiff_t>(a.size()));
    return c;
}

Matrix scale(const Matrix& a, double factor) {
    Matrix c = a;
    for (double& v : c.data()) v *= factor;
    return c;
}

Matrix row_slice(const Matrix& a, std::size_t begin, std::size_t end) {
    if (begin > end || end > a.rows()) throw std::out_of_range("row_slice: bad range");
    return Matrix(end - begin, a.cols(), a.data().subspan(begin * a.cols(), (end - begin) * a.cols()));
}

// ---------------------------------------------------------------------------

UpperTriangular::UpperTriangular(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("upper triangular factor must be square");
    for (std::size_t i = 1; i < m_.rows(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (m_(i, j) != 0.0) throw std::invalid_argument("entry below the diagonal is nonzero");
        }
    }
}

UpperTriangular UpperTriangular::zeros(std::size_t n) { return UpperTriangular(Matrix(n, n)); }

std::vector<double> UpperTriangular::diagonal() const {
    std::vector<double> d(size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = m_(i, i);
    return d;
}

void UpperTriangular::negate_row(std::size_t i) noexcept {
    for (std::size_t j = i; j < m_.cols(); ++j) m_(i, j) = -m_(i, j);
}

}  // namespace figaro
