#include "figaro/data_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string_view>
#include <vector>

namespace figaro {

double open_unit_from_bits(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

Table gen_uniform(const GenSpec& spec) {
    if (spec.rows == 0 || spec.cols == 0) throw std::invalid_argument("gen_uniform: rows and cols must be >= 1");
    if (spec.key_groups && (*spec.key_groups == 0 || *spec.key_groups > spec.rows)) {
        throw std::invalid_argument("gen_uniform: key_groups must be in 1..rows");
    }

    std::mt19937_64 engine(spec.seed);
    Matrix data(spec.rows, spec.cols);
    for (double& v : data.data()) v = open_unit_from_bits(engine());

    if (!spec.key_groups) return Table(std::move(data));

    // The first rows % groups groups get one extra row.
    const std::size_t groups = *spec.key_groups;
    const std::size_t base = spec.rows / groups;
    const std::size_t extra = spec.rows % groups;
    std::vector<std::int64_t> keys;
    keys.reserve(spec.rows);
    for (std::size_t g = 0; g < groups; ++g) {
        keys.insert(keys.end(), base + (g < extra ? 1 : 0), static_cast<std::int64_t>(g));
    }
    return Table(std::move(data), std::move(keys));
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

std::string where(const std::filesystem::path& path, std::size_t line, std::size_t col) {
    return path.string() + ":" + std::to_string(line) + ": column " + std::to_string(col);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size() && !text.empty();
}

struct ParsedCsv {
    std::vector<double> values;
    std::vector<std::int64_t> keys;
    std::size_t rows = 0;
    std::size_t cols = 0;
};

ParsedCsv parse_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    ParsedCsv out;
    std::optional<std::size_t> width;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = options.has_header;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto fields = split_fields(view);
        if (!width) {
            width = fields.size();
            if (options.key_col && *options.key_col >= *width) {
                throw IoError(path.string() + ": key column " + std::to_string(*options.key_col) +
                              " is out of range for " + std::to_string(*width) + " columns");
            }
        } else if (fields.size() != *width) {
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " + std::to_string(*width) +
                          " fields, found " + std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const std::string_view field = trim(fields[c]);
            if (options.key_col && c == *options.key_col) {
                std::int64_t key = 0;
                if (!parse_number(field, key)) {
                    throw IoError(where(path, line_no, c + 1) + ": '" + std::string(field) + "' is not an integer key");
                }
                if (!out.keys.empty() && key < out.keys.back()) {
                    throw IoError(where(path, line_no, c + 1) + ": keys are not sorted non-decreasing");
                }
                out.keys.push_back(key);
                continue;
            }
            double value = 0.0;
            if (!parse_number(field, value) || !std::isfinite(value)) {
                throw IoError(where(path, line_no, c + 1) + ": '" + std::string(field) + "' is not a finite number");
            }
            out.values.push_back(value);
        }
        ++out.rows;
    }
    if (in.bad()) throw IoError("error reading " + path.string());
    out.cols = width ? *width - (options.key_col ? 1 : 0) : 0;
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("error writing " + path.string());
}

}  // namespace

Table read_table(const std::filesystem::path& path, const CsvOptions& options) {
    ParsedCsv csv = parse_csv(path, options);
    Matrix data(csv.rows, csv.cols, csv.values);
    if (options.key_col) return Table(std::move(data), std::move(csv.keys));
    return Table(std::move(data));
}

Matrix read_matrix(const std::filesystem::path& path, bool has_header) {
    ParsedCsv csv = parse_csv(path, {has_header, std::nullopt});
    return Matrix(csv.rows, csv.cols, csv.values);
}

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

void write_matrix(const Matrix& m, const std::filesystem::path& path) {
    std::string text;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = m.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) text += ',';
            text += format_double(row[j]);
        }
        text += '\n';
    }
    write_text(path, text);
}

void write_table(const Table& t, const std::filesystem::path& path, bool header) {
    std::string text;
    if (header) {
        if (t.has_keys()) text += "key";
        for (std::size_t j = 0; j < t.cols(); ++j) {
            if (j || t.has_keys()) text += ',';
            text += "x" + std::to_string(j);
        }
        text += '\n';
    }
    for (std::size_t i = 0; i < t.rows(); ++i) {
        if (t.has_keys()) text += std::to_string((*t.keys())[i]);
        auto row = t.data().row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j || t.has_keys()) text += ',';
            text += format_double(row[j]);
        }
        text += '\n';
    }
    write_text(path, text);
}

void write_svd(const SvdResult& result, const std::filesystem::path& values_path,
               const std::optional<std::filesystem::path>& vectors_path) {
    std::string text;
    for (double v : result.values) text += format_double(v) + '\n';
    write_text(values_path, text);
    if (result.right_vectors) {
        if (!vectors_path) throw std::invalid_argument("write_svd: right vectors present but no path given");
        write_matrix(*result.right_vectors, *vectors_path);
    }
}

}  // namespace figaro
