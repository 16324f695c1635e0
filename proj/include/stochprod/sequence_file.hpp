#pragma once

// Plain-text matrix sequence files:
//
//     n=3
//     # preset=cycle-core
//     # seed=7
//
//     0.5 0.5 0
//     0 0.5 0.5
//     0.5 0 0.5
//
//     ...
//
// The header line "n=<int>" comes first; "# key=value" lines before the
// first record are metadata, other '#' lines are comments. Records are
// blocks of n lines with n whitespace-separated decimals, separated by
// one or more blank lines.

#include <charconv>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stochprod/error.hpp"
#include "stochprod/hypotheses.hpp"
#include "stochprod/stochastic.hpp"

namespace stochprod {

struct SequenceFile {
    std::size_t n = 0;
    std::vector<std::pair<std::string, std::string>> metadata;
    /// Row-major n*n raw values per record, unvalidated.
    std::vector<std::vector<double>> records;
};

/// Validation failure of one record; indices are 1-based.
class InvalidRecord : public Error {
public:
    InvalidRecord(const std::string& what, std::size_t record, std::size_t row)
        : Error(what), record_(record), row_(row) {}

    std::size_t record() const noexcept { return record_; }
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t record_;
    std::size_t row_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<double> parse_row(std::string_view line, std::size_t lineno) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == ','))
            ++pos;
        if (pos >= line.size())
            break;
        double v = 0.0;
        const char* begin = line.data() + pos;
        const char* end = line.data() + line.size();
        if (*begin == '+')
            ++begin;
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() ||
            (ptr != end && *ptr != ' ' && *ptr != '\t' && *ptr != ','))
            throw ParseError("line " + std::to_string(lineno) + ": not a decimal number", lineno);
        out.push_back(v);
        pos = static_cast<std::size_t>(ptr - line.data());
    }
    return out;
}

} // namespace detail

inline SequenceFile parse_sequence_file(std::istream& in) {
    SequenceFile file;
    std::string raw;
    std::size_t lineno = 0;
    bool have_header = false;
    std::vector<double> current;
    std::size_t rows_in_current = 0;

    auto close_record = [&](std::size_t at_line) {
        if (rows_in_current == 0)
            return;
        if (rows_in_current != file.n)
            throw ParseError("line " + std::to_string(at_line) + ": record " +
                                 std::to_string(file.records.size() + 1) + " has " +
                                 std::to_string(rows_in_current) + " rows, expected " +
                                 std::to_string(file.n),
                             at_line);
        file.records.push_back(std::move(current));
        current.clear();
        rows_in_current = 0;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        const auto line = detail::trim(raw);
        if (!line.empty() && line.front() == '#') {
            if (have_header && file.records.empty() && rows_in_current == 0) {
                const auto body = detail::trim(line.substr(1));
                const auto eq = body.find('=');
                if (eq != std::string_view::npos)
                    file.metadata.emplace_back(std::string(detail::trim(body.substr(0, eq))),
                                               std::string(detail::trim(body.substr(eq + 1))));
            }
            continue;
        }
        if (!have_header) {
            if (line.empty())
                continue;
            if (line.substr(0, 2) != "n=")
                throw ParseError("line " + std::to_string(lineno) +
                                     ": expected header \"n=<int>\"",
                                 lineno);
            const auto digits = line.substr(2);
            std::size_t n = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
            if (ec != std::errc() || ptr != digits.data() + digits.size() || n == 0)
                throw ParseError("line " + std::to_string(lineno) +
                                     ": dimension must be a positive integer",
                                 lineno);
            file.n = n;
            have_header = true;
            continue;
        }
        if (line.empty()) {
            close_record(lineno);
            continue;
        }
        auto row = detail::parse_row(line, lineno);
        if (row.size() != file.n)
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                                 std::to_string(file.n) + " values, got " +
                                 std::to_string(row.size()),
                             lineno);
        if (rows_in_current == file.n)
            throw ParseError("line " + std::to_string(lineno) + ": record " +
                                 std::to_string(file.records.size() + 1) +
                                 " has more than " + std::to_string(file.n) + " rows",
                             lineno);
        current.insert(current.end(), row.begin(), row.end());
        ++rows_in_current;
    }
    if (!have_header)
        throw ParseError("missing header \"n=<int>\"", lineno);
    close_record(lineno);
    if (file.records.empty())
        throw ParseError("no matrices", lineno);
    return file;
}

inline SequenceFile read_sequence_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string(), 0);
    return parse_sequence_file(in);
}

/// Validates every record; the first failure is reported with its record
/// and row.
inline MatrixSequence to_sequence(const SequenceFile& file, const ValidationTolerances& tol = {}) {
    std::vector<StochasticMatrix> items;
    items.reserve(file.records.size());
    for (std::size_t r = 0; r < file.records.size(); ++r) {
        try {
            items.push_back(validate_stochastic(file.n, file.records[r], tol));
        } catch (const ValidationError& e) {
            throw InvalidRecord("record " + std::to_string(r + 1) + ", row " +
                                    std::to_string(e.row() + 1) + ": " + e.what(),
                                r + 1, e.row() + 1);
        }
    }
    return MatrixSequence(std::move(items));
}

/// Shortest decimal form that reads back to the same double.
inline std::string format_real(double v) {
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v)
            break;
    }
    return buf;
}

inline void write_sequence(std::ostream& out, std::size_t n,
                           const std::vector<std::pair<std::string, std::string>>& metadata,
                           std::span<const std::vector<double>> records) {
    out << "n=" << n << '\n';
    for (const auto& [k, v] : metadata)
        out << "# " << k << '=' << v << '\n';
    for (const auto& rec : records) {
        out << '\n';
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                out << (j ? " " : "") << format_real(rec[i * n + j]);
            out << '\n';
        }
    }
}

/// Writes via a temporary file and a rename, so readers never see a partial file.
inline void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out)
            throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace stochprod
