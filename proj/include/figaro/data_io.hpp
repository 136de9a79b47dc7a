// Synthetic table generation and CSV input/output.
//
// CSV dialect: ',' separator, '.' decimal point, one row per line, an optional
// single header row, no quoting. Doubles are written in the shortest form that
// reads back to the same value.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "figaro/join_reduce.hpp"
#include "figaro/matrix.hpp"
#include "figaro/svd.hpp"

namespace figaro {

/// Raised for unreadable files and malformed CSV. The message names the file
/// and, where relevant, the 1-based line and column.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GenSpec {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::uint64_t seed = 0;
    /// When set, attach a sorted key column 0..key_groups-1 of near-equal runs.
    std::optional<std::size_t> key_groups;
};

/// Maps one std::mt19937_64 output onto the open interval (0, 1) using its
/// top 52 bits: ((x >> 12) + 0.5) * 2^-52. The extreme values are 2^-53 and
/// 1 - 2^-53, both exact doubles (with 53 bits the top value rounds to 1).
/// Both the engine and this mapping are fully specified, so a given seed
/// yields the same table on every platform.
double open_unit_from_bits(std::uint64_t bits) noexcept;

/// rows x cols table of i.i.d. uniform (0,1) entries drawn row by row from
/// std::mt19937_64 seeded with spec.seed. Throws std::invalid_argument on
/// zero rows/cols or key_groups outside 1..rows.
Table gen_uniform(const GenSpec& spec);

struct CsvOptions {
    bool has_header = false;
    /// Zero-based column holding integer join keys.
    std::optional<std::size_t> key_col;
};

Table read_table(const std::filesystem::path& path, const CsvOptions& options = {});

Matrix read_matrix(const std::filesystem::path& path, bool has_header = false);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

void write_matrix(const Matrix& m, const std::filesystem::path& path);

/// Keys (when present) are written as column 0.
void write_table(const Table& t, const std::filesystem::path& path, bool header = false);

/// Singular values one per line to `values_path`; V (if present) as a matrix
/// to `vectors_path` (required when V is present).
void write_svd(const SvdResult& result, const std::filesystem::path& values_path,
               const std::optional<std::filesystem::path>& vectors_path = std::nullopt);

}  // namespace figaro
