// Benchmark harness: factorized path vs. materialize-then-decompose baseline
// over a grid of (rows, cols) configurations. Both relations in a cell are
// rows x cols uniform tables and their join is the Cartesian product.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace figaro {

enum class BenchTarget { Qr, Svd };

struct Timing {
    std::vector<double> samples_ms;

    double mean() const;
    double median() const;
};

/// Runs `fn` once untimed, then `repeats` timed runs on a monotonic clock.
Timing time_repeated(const std::function<void()>& fn, std::size_t repeats);

/// Keeps freed memory in the malloc heap instead of returning it to the OS,
/// so a repeated large allocation costs the same at every size. Without this
/// glibc maps blocks above its adaptive mmap threshold (at most 32 MiB) fresh
/// on each call and every timed run pays for page faults. No-op elsewhere.
void pin_allocator_thresholds();

struct BenchConfig {
    std::vector<std::size_t> rows_list;
    std::vector<std::size_t> cols_list;
    std::size_t repeats = 4;
    BenchTarget target = BenchTarget::Qr;
    /// Baseline cells whose join would exceed this many entries are left empty.
    double skip_baseline_above = 2e8;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct BenchCell {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Timing figaro;
    std::optional<Timing> baseline;
    std::size_t repeats = 0;
    std::uint64_t join_rows = 0;
    std::uint64_t reduced_rows = 0;
    /// Peak live matrix bytes during one factorized run, inputs excluded.
    std::size_t figaro_peak_bytes = 0;
    /// R entries (row-major) or singular values from the last factorized run.
    std::vector<double> figaro_result;

    double figaro_ms() const { return figaro.mean(); }
    std::optional<double> baseline_ms() const;
    std::optional<double> speedup() const;
};

struct BenchReport {
    BenchTarget target = BenchTarget::Qr;
    std::vector<BenchCell> cells;
};

/// Cells are ordered row-major over (rows_list, cols_list).
BenchReport run_bench(const BenchConfig& config);

std::string format_csv(const BenchReport& report);

/// Aligned per-cell table followed by runtime and speed-up grids.
std::string format_markdown(const BenchReport& report);

}  // namespace figaro
