#include "ctreserve/triangle.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace ctreserve {

namespace {

using Kind = TriangleError::Kind;

[[noreturn]] void fail(Kind kind, int i, int j, const std::string& msg) {
    throw TriangleError(kind, i, j, msg);
}

std::string cell_name(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// Splits a CSV line on ','; no quoting, the format carries none.
std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view field, double& value) {
    field = trim(field);
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last;
}

bool parse_int(std::string_view field, int& value) {
    field = trim(field);
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last;
}

void validate_cells(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 3) {
        fail(Kind::too_small, 0, 0,
             "triangle needs at least 3 accident years, got " + std::to_string(n));
    }
    for (int i = 1; i <= n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i - 1)];
        const int expected = n - i + 1;
        const int got = static_cast<int>(row.size());
        if (got < expected) {
            fail(Kind::missing_cell, i, got + 1,
                 "missing cell " + cell_name(i, got + 1) + " inside the staircase");
        }
        if (got > expected) {
            fail(Kind::extra_cell, i, expected + 1,
                 "unexpected cell " + cell_name(i, expected + 1) + " below the diagonal");
        }
        for (int j = 1; j <= expected; ++j) {
            const double v = row[static_cast<std::size_t>(j - 1)];
            if (!std::isfinite(v) || v <= 0.0) {
                fail(Kind::non_positive, i, j,
                     "cell " + cell_name(i, j) + " must be strictly positive");
            }
        }
    }
}

}  // namespace

Triangle::Triangle(int n, std::vector<std::vector<double>> rows, std::string label)
    : n_(n), rows_(std::move(rows)), label_(std::move(label)) {}

Triangle Triangle::from_rows(std::vector<std::vector<double>> rows, std::string label) {
    validate_cells(rows);
    const int n = static_cast<int>(rows.size());
    return Triangle(n, std::move(rows), std::move(label));
}

Triangle Triangle::parse_csv(std::string_view text, std::string label) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find('\n', start);
        std::string_view line = pos == std::string_view::npos ? text.substr(start)
                                                              : text.substr(start, pos - start);
        line = trim(line);
        if (!line.empty()) lines.push_back(line);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (lines.empty()) fail(Kind::bad_header, 0, 0, "empty input");

    const auto header = split_fields(lines[0]);
    if (header.size() < 2 || trim(header[0]) != "dev") {
        fail(Kind::bad_header, 0, 0, "header must be 'dev,1,2,...,n'");
    }
    const int n = static_cast<int>(header.size()) - 1;
    for (int j = 1; j <= n; ++j) {
        int col = 0;
        if (!parse_int(header[static_cast<std::size_t>(j)], col) || col != j) {
            fail(Kind::bad_header, 0, j, "header column " + std::to_string(j) + " must be " +
                                             std::to_string(j));
        }
    }
    if (n < 3) {
        fail(Kind::too_small, 0, 0,
             "triangle needs at least 3 development years, got " + std::to_string(n));
    }
    if (static_cast<int>(lines.size()) - 1 != n) {
        fail(Kind::row_length, 0, 0,
             "expected " + std::to_string(n) + " accident-year rows, got " +
                 std::to_string(lines.size() - 1));
    }

    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const auto fields = split_fields(lines[static_cast<std::size_t>(i)]);
        int row_id = 0;
        if (!parse_int(fields[0], row_id) || row_id != i) {
            fail(Kind::row_length, i, 0,
                 "row " + std::to_string(i) + " must start with its accident-year index");
        }
        const int expected = n - i + 1;
        const int got = static_cast<int>(fields.size()) - 1;
        if (got < expected) {
            fail(Kind::missing_cell, i, got + 1,
                 "missing cell " + cell_name(i, got + 1) + " inside the staircase");
        }
        if (got > expected) {
            fail(Kind::extra_cell, i, expected + 1,
                 "unexpected cell " + cell_name(i, expected + 1) + " below the diagonal");
        }
        std::vector<double> row(static_cast<std::size_t>(expected));
        for (int j = 1; j <= expected; ++j) {
            double v = 0.0;
            if (!parse_double(fields[static_cast<std::size_t>(j)], v)) {
                fail(Kind::non_numeric, i, j,
                     "cell " + cell_name(i, j) + " is not a number: '" +
                         std::string(fields[static_cast<std::size_t>(j)]) + "'");
            }
            row[static_cast<std::size_t>(j - 1)] = v;
        }
        rows.push_back(std::move(row));
    }
    return from_rows(std::move(rows), std::move(label));
}

int Triangle::row_length(int i) const {
    if (i < 1 || i > n_) throw std::out_of_range("accident year out of range");
    return n_ - i + 1;
}

double Triangle::at(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_ - i + 1) {
        throw std::out_of_range("cell " + cell_name(i, j) + " is not observed");
    }
    return rows_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
}

std::vector<std::pair<int, double>> Triangle::latest_diagonal() const {
    std::vector<std::pair<int, double>> out;
    out.reserve(static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i) out.emplace_back(i, at(i, n_ - i + 1));
    return out;
}

std::vector<double> Triangle::diagonal_values() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i) out.push_back(at(i, n_ - i + 1));
    return out;
}

std::string Triangle::to_csv() const {
    std::string out = "dev";
    for (int j = 1; j <= n_; ++j) out += "," + std::to_string(j);
    out += "\n";
    char buf[40];
    for (int i = 1; i <= n_; ++i) {
        out += std::to_string(i);
        for (int j = 1; j <= n_ - i + 1; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", at(i, j));
            out += ",";
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace ctreserve
