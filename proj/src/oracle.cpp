#include "figaro/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "figaro/qr.hpp"

namespace figaro {

Matrix materialize_cartesian(const Matrix& a, const Matrix& b) {
    if (a.rows() == 0 || b.rows() == 0) throw std::invalid_argument("materialize_cartesian: input matrix has no rows");
    Matrix j(a.rows() * b.rows(), a.cols() + b.cols());
    const auto split = static_cast<std::ptrdiff_t>(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < b.rows(); ++k) {
            auto out = j.row(i * b.rows() + k);
            std::ranges::copy(a.row(i), out.begin());
            std::ranges::copy(b.row(k), out.begin() + split);
        }
    }
    return j;
}

Matrix materialize_natural_join(const Table& a, const Table& b) {
    if (!a.has_keys() || !b.has_keys()) throw std::invalid_argument("materialize_natural_join: both tables need keys");
    const auto& lk = *a.keys();
    const auto& rk = *b.keys();

    // Sort-merge: first count, then fill.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t i = 0;
    std::size_t k = 0;
    while (i < lk.size() && k < rk.size()) {
        if (lk[i] < rk[k]) {
            ++i;
        } else if (rk[k] < lk[i]) {
            ++k;
        } else {
            const auto key = lk[i];
            std::size_t ie = i;
            while (ie < lk.size() && lk[ie] == key) ++ie;
            std::size_t ke = k;
            while (ke < rk.size() && rk[ke] == key) ++ke;
            for (std::size_t x = i; x < ie; ++x) {
                for (std::size_t y = k; y < ke; ++y) pairs.emplace_back(x, y);
            }
            i = ie;
            k = ke;
        }
    }

    Matrix j(pairs.size(), a.cols() + b.cols());
    const auto split = static_cast<std::ptrdiff_t>(a.cols());
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        auto out = j.row(r);
        std::ranges::copy(a.data().row(pairs[r].first), out.begin());
        std::ranges::copy(b.data().row(pairs[r].second), out.begin() + split);
    }
    return j;
}

Matrix materialize_join(const Table& a, const Table& b) {
    if (a.has_keys() != b.has_keys()) {
        throw std::invalid_argument("either both tables carry join keys or neither does");
    }
    if (a.has_keys()) return materialize_natural_join(a, b);
    return materialize_cartesian(a.data(), b.data());
}

UpperTriangular baseline_r(Matrix j) { return canonicalize(householder_r(std::move(j))); }

SvdResult baseline_svd(Matrix j, bool want_vectors) { return svd_of_r(baseline_r(std::move(j)), want_vectors); }

double det_lu(Matrix j) {
    if (j.rows() != j.cols()) throw std::invalid_argument("det_lu: matrix is not square");
    const std::size_t n = j.rows();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(j(i, k)) > std::abs(j(pivot, k))) pivot = i;
        }
        if (j(pivot, k) == 0.0) return 0.0;
        if (pivot != k) {
            std::ranges::swap_ranges(j.row(pivot), j.row(k));
            det = -det;
        }
        const double d = j(k, k);
        det *= d;
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = j(i, k) / d;
            if (factor == 0.0) continue;
            for (std::size_t c = k + 1; c < n; ++c) j(i, c) -= factor * j(k, c);
        }
    }
    return det;
}

RDifference compare_r(const UpperTriangular& candidate, const UpperTriangular& reference, double pivot_tol) {
    if (candidate.size() != reference.size()) throw std::invalid_argument("compare_r: sizes differ");
    const Matrix& ref = reference.matrix();
    const double threshold = pivot_tol * std::max(1.0, max_abs(ref));

    bool unique = true;
    for (std::size_t i = 0; i < ref.rows() && unique; ++i) {
        if (std::abs(ref(i, i)) > threshold) continue;
        for (std::size_t c = i + 1; c < ref.cols(); ++c) {
            if (std::abs(ref(i, c)) > threshold) {
                unique = false;
                break;
            }
        }
    }

    if (unique) {
        return {RComparison::Entrywise,
                max_abs_diff(candidate.matrix(), ref) / std::max(1.0, max_abs(ref))};
    }
    const Matrix g_ref = gram(ref);
    return {RComparison::Gram, max_abs_diff(gram(candidate.matrix()), g_ref) / std::max(1.0, max_abs(g_ref))};
}

}  // namespace figaro
