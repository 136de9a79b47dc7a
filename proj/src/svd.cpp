#include "figaro/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "figaro/qr.hpp"

namespace figaro {

namespace {

// Rotates rows p and q of a row-major matrix in place:
//   p' = c p - s q,  q' = s p + c q
void rotate_rows(Matrix& m, std::size_t p, std::size_t q, double c, double s) {
    auto x = m.row(p);
    auto y = m.row(q);
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double xp = x[k];
        const double yq = y[k];
        x[k] = c * xp - s * yq;
        y[k] = s * xp + c * yq;
    }
}

}  // namespace

SvdResult svd_of_r(const UpperTriangular& r, bool want_vectors, const JacobiOptions& options) {
    const std::size_t n = r.size();

    // Work on R^T so that the columns being orthogonalised are contiguous rows.
    Matrix w = transpose(r.matrix());
    Matrix vt = Matrix::identity(n);

    bool converged = n < 2;
    for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                auto wp = w.row(p);
                auto wq = w.row(q);
                double alpha = 0.0;
                double beta = 0.0;
                double gamma = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    alpha += wp[k] * wp[k];
                    beta += wq[k] * wq[k];
                    gamma += wp[k] * wq[k];
                }
                if (alpha == 0.0 || beta == 0.0 || gamma == 0.0) continue;
                if (std::abs(gamma) < options.tolerance * std::sqrt(alpha) * std::sqrt(beta)) continue;
                converged = false;

                // Rotation angle that zeroes the (p, q) entry of the 2x2 Gram block.
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::abs(zeta) > 1e150
                                     ? 0.5 / zeta
                                     : std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                rotate_rows(w, p, q, c, s);
                if (want_vectors) rotate_rows(vt, p, q, c, s);
            }
        }
    }
    if (!converged) {
        throw std::runtime_error("one-sided Jacobi did not converge in " + std::to_string(options.max_sweeps) +
                                 " sweeps");
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (double x : w.row(j)) sum += x * x;
        norms[j] = std::sqrt(sum);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::ranges::stable_sort(order, [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

    SvdResult result;
    result.values.reserve(n);
    for (std::size_t j : order) result.values.push_back(norms[j]);
    if (want_vectors) {
        Matrix v(n, n);
        for (std::size_t out = 0; out < n; ++out) {
            auto src = vt.row(order[out]);
            for (std::size_t i = 0; i < n; ++i) v(i, out) = src[i];
        }
        result.right_vectors = std::move(v);
    }
    return result;
}

SvdResult figaro_svd(const Table& a, const Table& b, bool want_vectors, unsigned threads) {
    return svd_of_r(figaro_r(a, b, threads), want_vectors);
}

}  // namespace figaro
