#include "figaro/headtail.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace figaro {

namespace {

void run_columns(const RowBlock& in, const HeadTailSink& sink, std::size_t col_begin, std::size_t col_end) {
    const std::size_t width = col_end - col_begin;
    if (width == 0) return;

    // prefix[j] holds sum_{k < r} in(k, col_begin + j) while row r is visited.
    Scratch prefix(width, 0.0);
    for (std::size_t j = 0; j < width; ++j) prefix[j] = in(0, col_begin + j);

    for (std::size_t r = 1; r < in.rows; ++r) {
        const double i = static_cast<double>(r);
        const double sqrt_i = std::sqrt(i);
        const double inv_sqrt_next = 1.0 / std::sqrt(i + 1.0);
        auto dst = sink.out->row(sink.tail_row + r - 1).subspan(sink.tail_col + col_begin, width);
        for (std::size_t j = 0; j < width; ++j) {
            const double a = in(r, col_begin + j);
            const double t = inv_sqrt_next * (sqrt_i * a - prefix[j] / sqrt_i);
            dst[j] = t * sink.tail_scale;
            prefix[j] += a;
        }
    }

    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(in.rows));
    for (std::size_t j = 0; j < width; ++j) sink.head_out[col_begin + j] = inv_sqrt_m * prefix[j];
}

void require_rows(const Matrix& m, const char* op) {
    if (m.rows() == 0) throw std::invalid_argument(std::string(op) + " is undefined for a matrix with no rows");
}

}  // namespace

void head_tail_into(const RowBlock& in, const HeadTailSink& sink, unsigned threads) {
    if (in.rows == 0) throw std::invalid_argument("head/tail of an empty block");
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(in.cols, 1));
    if (workers == 1) {
        run_columns(in, sink, 0, in.cols);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = in.cols / workers;
    const std::size_t extra = in.cols % workers;
    std::size_t begin = 0;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t end = begin + chunk + (w < extra ? 1 : 0);
        pool.emplace_back([&in, &sink, begin, end] { run_columns(in, sink, begin, end); });
        begin = end;
    }
}

Matrix head(const Matrix& m) {
    require_rows(m, "head");
    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m.rows()));
    Matrix h(1, m.cols());
    auto out = h.row(0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto x = m.row(i);
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[j];
    }
    for (double& v : out) v *= inv_sqrt_m;
    return h;
}

Matrix tail(const Matrix& m, unsigned threads) {
    require_rows(m, "tail");
    Matrix t(m.rows() - 1, m.cols());
    Scratch scratch(m.cols());
    head_tail_into(RowBlock::of(m), {scratch, &t, 0, 0, 1.0}, threads);
    return t;
}

Matrix head_tail(const Matrix& m, unsigned threads) {
    require_rows(m, "head_tail");
    Matrix out(m.rows(), m.cols());
    head_tail_into(RowBlock::of(m), {out.row(0), &out, 1, 0, 1.0}, threads);
    return out;
}

}  // namespace figaro
