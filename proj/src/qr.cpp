#include "figaro/qr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace figaro {

namespace {

Matrix pad_rows(Matrix m) {
    if (m.rows() >= m.cols()) return m;
    Matrix padded(m.cols(), m.cols());
    std::ranges::copy(m.data(), padded.data().begin());
    return padded;
}

UpperTriangular take_upper(const Matrix& work) {
    const std::size_t n = work.cols();
    Matrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) r(i, j) = work(i, j);
    }
    return UpperTriangular(std::move(r));
}

// Householder triangularization of the first `rows` rows of `a`, in place.
// Afterwards rows >= a.cols() within that range are exactly zero.
void triangularize(Matrix& a, std::size_t rows, Scratch& v, Scratch& dots) {
    const std::size_t n = a.cols();
    for (std::size_t k = 0; k < n && k < rows; ++k) {
        double norm2 = 0.0;
        for (std::size_t i = k; i < rows; ++i) norm2 += a(i, k) * a(i, k);
        if (norm2 == 0.0) continue;

        const double x0 = a(k, k);
        const double alpha = x0 >= 0.0 ? -std::sqrt(norm2) : std::sqrt(norm2);
        // v = x - alpha e1, H = I - tau v v^T with tau = 2 / v^T v.
        v[k] = x0 - alpha;
        for (std::size_t i = k + 1; i < rows; ++i) v[i] = a(i, k);
        const double vtv = 2.0 * (norm2 - x0 * alpha);
        const double tau = 2.0 / vtv;

        std::fill(dots.begin() + static_cast<std::ptrdiff_t>(k) + 1, dots.end(), 0.0);
        for (std::size_t i = k; i < rows; ++i) {
            const double vi = v[i];
            if (vi == 0.0) continue;
            auto row = a.row(i);
            for (std::size_t j = k + 1; j < n; ++j) dots[j] += vi * row[j];
        }
        for (std::size_t j = k + 1; j < n; ++j) dots[j] *= tau;
        for (std::size_t i = k; i < rows; ++i) {
            const double vi = v[i];
            if (vi == 0.0) continue;
            auto row = a.row(i);
            for (std::size_t j = k + 1; j < n; ++j) row[j] -= vi * dots[j];
        }
        a(k, k) = alpha;
        for (std::size_t i = k + 1; i < rows; ++i) a(i, k) = 0.0;
    }
}

// Rows folded into the running R per step; a panel of (n + kPanelRows) x n
// doubles stays cache resident for the column counts we handle.
constexpr std::size_t kPanelRows = 256;

}  // namespace

UpperTriangular householder_r(Matrix m) {
    if (m.cols() == 0) throw std::invalid_argument("householder_r: matrix has no columns");
    const std::size_t n = m.cols();

    if (m.rows() <= n + kPanelRows) {
        Matrix a = pad_rows(std::move(m));
        Scratch v(a.rows());
        Scratch dots(n);
        triangularize(a, a.rows(), v, dots);
        return take_upper(a);
    }

    // Tall input: keep R in the top n rows of a small panel and fold in
    // kPanelRows input rows at a time. Each fold is an ordinary Householder
    // step on [R; rows], so the result is the R of the whole matrix while the
    // input is streamed through once.
    Matrix panel(n + kPanelRows, n);
    Scratch v(panel.rows());
    Scratch dots(n);
    for (std::size_t start = 0; start < m.rows(); start += kPanelRows) {
        const std::size_t count = std::min(kPanelRows, m.rows() - start);
        std::ranges::copy(m.data().subspan(start * n, count * n), panel.row(n).begin());
        triangularize(panel, n + count, v, dots);
    }
    return take_upper(panel);
}

UpperTriangular givens_r(Matrix m) {
    if (m.cols() == 0) throw std::invalid_argument("givens_r: matrix has no columns");
    Matrix a = pad_rows(std::move(m));
    const std::size_t rows = a.rows();
    const std::size_t n = a.cols();

    for (std::size_t k = 0; k < n; ++k) {
        auto pivot = a.row(k);
        for (std::size_t i = k + 1; i < rows; ++i) {
            auto row = a.row(i);
            const double y = row[k];
            if (y == 0.0) continue;
            const double x = pivot[k];
            const double r = std::hypot(x, y);
            const double c = x / r;
            const double s = y / r;
            pivot[k] = r;
            row[k] = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) {
                const double p = pivot[j];
                const double q = row[j];
                pivot[j] = c * p + s * q;
                row[j] = c * q - s * p;
            }
        }
    }
    return take_upper(a);
}

UpperTriangular canonicalize(UpperTriangular r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r(i, i) < 0.0) r.negate_row(i);
    }
    return r;
}

UpperTriangular figaro_r(const Table& a, const Table& b, unsigned threads) {
    ReducedMatrix reduced = reduce(a, b, threads);
    return canonicalize(householder_r(std::move(reduced.matrix)));
}

}  // namespace figaro
