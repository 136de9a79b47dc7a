#include "figaro/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "figaro/data_io.hpp"
#include "figaro/oracle.hpp"
#include "figaro/qr.hpp"
#include "figaro/svd.hpp"

namespace figaro {

double Timing::mean() const {
    if (samples_ms.empty()) return 0.0;
    return std::accumulate(samples_ms.begin(), samples_ms.end(), 0.0) / static_cast<double>(samples_ms.size());
}

double Timing::median() const {
    if (samples_ms.empty()) return 0.0;
    std::vector<double> s = samples_ms;
    std::ranges::sort(s);
    const std::size_t mid = s.size() / 2;
    return s.size() % 2 ? s[mid] : 0.5 * (s[mid - 1] + s[mid]);
}

void pin_allocator_thresholds() {
#if defined(__GLIBC__)
    mallopt(M_MMAP_THRESHOLD, 1 << 30);
    mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
}

Timing time_repeated(const std::function<void()>& fn, std::size_t repeats) {
    using Clock = std::chrono::steady_clock;
    fn();
    Timing t;
    t.samples_ms.reserve(repeats);
    for (std::size_t r = 0; r < repeats; ++r) {
        const auto start = Clock::now();
        fn();
        const auto stop = Clock::now();
        t.samples_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return t;
}

std::optional<double> BenchCell::baseline_ms() const {
    if (!baseline) return std::nullopt;
    return baseline->mean();
}

std::optional<double> BenchCell::speedup() const {
    if (!baseline) return std::nullopt;
    return baseline->mean() / figaro.mean();
}

namespace {

std::vector<double> run_factorized(BenchTarget target, const Table& a, const Table& b, unsigned threads) {
    if (target == BenchTarget::Qr) {
        auto r = figaro_r(a, b, threads);
        auto d = r.matrix().data();
        return {d.begin(), d.end()};
    }
    return figaro_svd(a, b, false, threads).values;
}

void run_baseline(BenchTarget target, const Table& a, const Table& b) {
    Matrix j = materialize_join(a, b);
    if (target == BenchTarget::Qr) {
        (void)baseline_r(std::move(j));
    } else {
        (void)baseline_svd(std::move(j), false);
    }
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
    if (config.repeats == 0) throw std::invalid_argument("bench: repeats must be >= 1");
    BenchReport report;
    report.target = config.target;
    for (std::size_t rows : config.rows_list) {
        for (std::size_t cols : config.cols_list) {
            const Table a = gen_uniform({rows, cols, config.seed, std::nullopt});
            const Table b = gen_uniform({rows, cols, config.seed + 1, std::nullopt});

            BenchCell cell;
            cell.rows = rows;
            cell.cols = cols;
            cell.repeats = config.repeats;
            cell.join_rows = static_cast<std::uint64_t>(rows) * rows;
            cell.reduced_rows = 2 * static_cast<std::uint64_t>(rows) - 1;

            {
                AllocationScope scope;
                cell.figaro_result = run_factorized(config.target, a, b, config.threads);
                cell.figaro_peak_bytes = scope.peak_bytes();
            }
            cell.figaro = time_repeated(
                [&] { cell.figaro_result = run_factorized(config.target, a, b, config.threads); }, config.repeats);

            const double join_entries = static_cast<double>(cell.join_rows) * static_cast<double>(2 * cols);
            if (join_entries <= config.skip_baseline_above) {
                cell.baseline = time_repeated([&] { run_baseline(config.target, a, b); }, config.repeats);
            }
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

namespace {

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

const char* target_name(BenchTarget t) { return t == BenchTarget::Qr ? "qr" : "svd"; }

const std::vector<std::string> kColumns = {"target",  "rows",      "cols",         "figaro_ms",
                                           "baseline_ms", "speedup", "repeats", "join_rows",
                                           "reduced_rows", "figaro_peak_bytes"};

std::vector<std::string> cell_fields(BenchTarget target, const BenchCell& c) {
    const auto base = c.baseline_ms();
    const auto speed = c.speedup();
    return {target_name(target),
            std::to_string(c.rows),
            std::to_string(c.cols),
            fixed(c.figaro_ms(), 4),
            base ? fixed(*base, 4) : "",
            speed ? fixed(*speed, 2) : "",
            std::to_string(c.repeats),
            std::to_string(c.join_rows),
            std::to_string(c.reduced_rows),
            std::to_string(c.figaro_peak_bytes)};
}

template <typename Value>
void append_grid(std::ostringstream& os, const std::string& title, const BenchReport& report, Value value) {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (const auto& c : report.cells) {
        if (std::ranges::find(rows, c.rows) == rows.end()) rows.push_back(c.rows);
        if (std::ranges::find(cols, c.cols) == cols.end()) cols.push_back(c.cols);
    }
    os << "\n" << title << "\n\n| rows \\ cols |";
    for (auto c : cols) os << ' ' << std::setw(10) << c << " |";
    os << "\n|---:|";
    for (std::size_t k = 0; k < cols.size(); ++k) os << "---:|";
    os << '\n';
    for (auto r : rows) {
        os << "| " << std::setw(11) << r << " |";
        for (auto c : cols) {
            auto it = std::ranges::find_if(report.cells, [&](const BenchCell& x) { return x.rows == r && x.cols == c; });
            os << ' ' << std::setw(10) << (it == report.cells.end() ? std::string() : value(*it)) << " |";
        }
        os << '\n';
    }
}

}  // namespace

std::string format_csv(const BenchReport& report) {
    std::ostringstream os;
    for (std::size_t k = 0; k < kColumns.size(); ++k) os << (k ? "," : "") << kColumns[k];
    os << '\n';
    for (const auto& c : report.cells) {
        const auto fields = cell_fields(report.target, c);
        for (std::size_t k = 0; k < fields.size(); ++k) os << (k ? "," : "") << fields[k];
        os << '\n';
    }
    return os.str();
}

std::string format_markdown(const BenchReport& report) {
    std::vector<std::vector<std::string>> table;
    table.push_back(kColumns);
    for (const auto& c : report.cells) table.push_back(cell_fields(report.target, c));

    std::vector<std::size_t> width(kColumns.size(), 0);
    for (const auto& row : table) {
        for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
    }

    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& row) {
        os << '|';
        for (std::size_t k = 0; k < row.size(); ++k) os << ' ' << std::setw(static_cast<int>(width[k])) << row[k] << " |";
        os << '\n';
    };
    emit(table.front());
    os << '|';
    for (std::size_t k = 0; k < width.size(); ++k) os << std::string(width[k] + 1, '-') << ":|";
    os << '\n';
    for (std::size_t r = 1; r < table.size(); ++r) emit(table[r]);

    append_grid(os, "Factorized runtime (ms)", report, [](const BenchCell& c) { return fixed(c.figaro_ms(), 3); });
    append_grid(os, "Speed-up over baseline (empty: baseline skipped)", report, [](const BenchCell& c) {
        const auto s = c.speedup();
        return s ? fixed(*s, 1) : std::string();
    });
    return os.str();
}

}  // namespace figaro
