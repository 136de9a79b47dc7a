// figaro: R factor and SVD of a two-table join without materializing it.
//
//   figaro gen    --rows 100 --cols 2 --seed 1 --out s.csv [--key-groups 4]
//   figaro qr     --left s.csv --right t.csv [--key-col 0] --method figaro|baseline --out r.csv
//   figaro svd    --left s.csv --right t.csv [--key-col 0] --values-only|--with-v --out sigma.csv
//   figaro verify --left s.csv --right t.csv [--key-col 0] --tol 1e-8
//   figaro bench  --rows-list 100,200 --cols-list 4,8 --repeats 4 --target qr --format md
//
// Exit codes: 0 success, 1 verification failure, 2 usage or IO error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "figaro/bench.hpp"
#include "figaro/data_io.hpp"
#include "figaro/oracle.hpp"
#include "figaro/qr.hpp"
#include "figaro/svd.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InputArgs {
    std::string left;
    std::string right;
    std::optional<std::size_t> key_col;
    std::optional<std::size_t> left_key_col;
    std::optional<std::size_t> right_key_col;
    bool header = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--left", left, "Left table CSV")->required();
        cmd->add_option("--right", right, "Right table CSV")->required();
        cmd->add_option("--key-col", key_col, "Zero-based join-key column in both tables");
        cmd->add_option("--left-key-col", left_key_col, "Join-key column of the left table");
        cmd->add_option("--right-key-col", right_key_col, "Join-key column of the right table");
        cmd->add_flag("--header", header, "Input files start with a header row");
    }

    std::pair<figaro::Table, figaro::Table> load() const {
        const auto lk = left_key_col ? left_key_col : key_col;
        const auto rk = right_key_col ? right_key_col : key_col;
        if (lk.has_value() != rk.has_value()) {
            throw UsageError("key columns must be given for both tables or for neither");
        }
        return {figaro::read_table(left, {header, lk}), figaro::read_table(right, {header, rk})};
    }
};

std::vector<std::size_t> parse_list(const std::string& text, const char* flag) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const std::string item = text.substr(start, comma - start);
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v <= 0) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + ": '" + item + "' is not a positive integer");
        }
        start = comma + 1;
    }
    return out;
}

int run_gen(std::size_t rows, std::size_t cols, std::uint64_t seed, std::optional<std::size_t> key_groups,
            const std::string& out, bool header) {
    const auto table = figaro::gen_uniform({rows, cols, seed, key_groups});
    figaro::write_table(table, out, header);
    return kExitOk;
}

int run_qr(const InputArgs& in, const std::string& method, const std::string& out, unsigned threads) {
    const auto [a, b] = in.load();
    const auto r = method == "baseline" ? figaro::baseline_r(figaro::materialize_join(a, b))
                                        : figaro::figaro_r(a, b, threads);
    figaro::write_matrix(r.matrix(), out);
    return kExitOk;
}

int run_svd(const InputArgs& in, bool with_v, const std::string& out, std::string v_out, unsigned threads) {
    const auto [a, b] = in.load();
    const auto result = figaro::figaro_svd(a, b, with_v, threads);
    if (with_v && v_out.empty()) v_out = out + ".v.csv";
    figaro::write_svd(result, out, with_v ? std::optional<std::filesystem::path>(v_out) : std::nullopt);
    return kExitOk;
}

int run_verify(const InputArgs& in, double tol, unsigned threads) {
    const auto [a, b] = in.load();
    const auto fig_r = figaro::figaro_r(a, b, threads);
    const auto base_r = figaro::baseline_r(figaro::materialize_join(a, b));
    const auto r_diff = figaro::compare_r(fig_r, base_r);

    const auto fig_s = figaro::svd_of_r(fig_r, false).values;
    const auto base_s = figaro::svd_of_r(base_r, false).values;
    const double scale = std::max(1.0, base_s.empty() ? 0.0 : base_s.front());
    double s_diff = 0.0;
    for (std::size_t i = 0; i < fig_s.size(); ++i) s_diff = std::max(s_diff, std::abs(fig_s[i] - base_s[i]) / scale);

    const bool ok = r_diff.relative <= tol && s_diff <= tol;
    std::cout << "r_diff " << r_diff.relative << " ("
              << (r_diff.mode == figaro::RComparison::Entrywise ? "entrywise" : "gram") << ")\n"
              << "sigma_diff " << s_diff << '\n'
              << (ok ? "OK" : "MISMATCH") << '\n';
    return ok ? kExitOk : kExitMismatch;
}

int run_bench_cmd(const std::string& rows_list, const std::string& cols_list, std::size_t repeats,
                  const std::string& target, const std::string& format, double skip_above, std::uint64_t seed,
                  const std::string& out, unsigned threads) {
    figaro::BenchConfig config;
    config.rows_list = parse_list(rows_list, "--rows-list");
    config.cols_list = parse_list(cols_list, "--cols-list");
    config.repeats = repeats;
    config.target = target == "svd" ? figaro::BenchTarget::Svd : figaro::BenchTarget::Qr;
    config.skip_baseline_above = skip_above;
    config.seed = seed;
    config.threads = threads;

    figaro::pin_allocator_thresholds();
    const auto report = figaro::run_bench(config);
    const std::string text = format == "md" ? figaro::format_markdown(report) : figaro::format_csv(report);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(out, std::ios::trunc);
        if (!file) throw figaro::IoError("cannot open " + out + " for writing");
        file << text;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"R factor and SVD of a two-table join matrix, computed from the inputs"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "Worker threads for the column-parallel kernels")
        ->check(CLI::PositiveNumber);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a uniform (0,1) table");
    std::size_t gen_rows = 0;
    std::size_t gen_cols = 0;
    std::uint64_t gen_seed = 0;
    std::optional<std::size_t> key_groups;
    std::string gen_out;
    bool gen_header = false;
    gen->add_option("--rows", gen_rows)->required();
    gen->add_option("--cols", gen_cols)->required();
    gen->add_option("--seed", gen_seed);
    gen->add_option("--key-groups", key_groups, "Attach a sorted key column (column 0) with this many groups");
    gen->add_option("--out", gen_out)->required();
    gen->add_flag("--header", gen_header);

    // qr
    auto* qr = app.add_subcommand("qr", "Canonical R factor of the join");
    InputArgs qr_in;
    qr_in.attach(qr);
    std::string method = "figaro";
    std::string qr_out;
    qr->add_option("--method", method)->check(CLI::IsMember({"figaro", "baseline"}));
    qr->add_option("--out", qr_out)->required();

    // svd
    auto* svd = app.add_subcommand("svd", "Singular values (and optionally V) of the join");
    InputArgs svd_in;
    svd_in.attach(svd);
    bool values_only = false;
    bool with_v = false;
    std::string svd_out;
    std::string v_out;
    auto* vo = svd->add_flag("--values-only", values_only);
    svd->add_flag("--with-v", with_v)->excludes(vo);
    svd->add_option("--out", svd_out)->required();
    svd->add_option("--v-out", v_out, "Where to write V (default: <out>.v.csv)");

    // verify
    auto* verify = app.add_subcommand("verify", "Compare the factorized path against the materialized join");
    InputArgs verify_in;
    verify_in.attach(verify);
    double tol = 1e-8;
    verify->add_option("--tol", tol)->check(CLI::NonNegativeNumber);

    // bench
    auto* bench = app.add_subcommand("bench", "Time factorized vs. baseline over a grid");
    std::string rows_list;
    std::string cols_list;
    std::size_t repeats = 4;
    std::string target = "qr";
    std::string format = "csv";
    double skip_above = 2e8;
    std::uint64_t bench_seed = 1;
    std::string bench_out;
    bench->add_option("--rows-list", rows_list)->required();
    bench->add_option("--cols-list", cols_list)->required();
    bench->add_option("--repeats", repeats)->check(CLI::PositiveNumber);
    bench->add_option("--target", target)->check(CLI::IsMember({"qr", "svd"}));
    bench->add_option("--format", format)->check(CLI::IsMember({"csv", "md"}));
    bench->add_option("--skip-baseline-above", skip_above, "Join-entry count above which the baseline is skipped");
    bench->add_option("--seed", bench_seed);
    bench->add_option("--out", bench_out, "Report file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) return run_gen(gen_rows, gen_cols, gen_seed, key_groups, gen_out, gen_header);
        if (*qr) return run_qr(qr_in, method, qr_out, threads);
        if (*svd) return run_svd(svd_in, with_v, svd_out, v_out, threads);
        if (*verify) return run_verify(verify_in, tol, threads);
        if (*bench) {
            return run_bench_cmd(rows_list, cols_list, repeats, target, format, skip_above, bench_seed, bench_out,
                                 threads);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
