#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ctreserve {

/// Validation failure while building or parsing a run-off triangle.
/// row()/col() give the offending 1-based cell when one is identifiable,
/// otherwise 0.
class TriangleError : public std::runtime_error {
public:
    enum class Kind {
        bad_header,
        row_length,
        non_numeric,
        non_positive,
        missing_cell,
        extra_cell,
        too_small,
        unknown_dataset,
    };

    TriangleError(Kind kind, int row, int col, const std::string& message)
        : std::runtime_error(message), kind_(kind), row_(row), col_(col) {}

    Kind kind() const noexcept { return kind_; }
    int row() const noexcept { return row_; }
    int col() const noexcept { return col_; }

private:
    Kind kind_;
    int row_;
    int col_;
};

/// Cumulative run-off triangle of claims amounts.
///
/// C_{i,j} is indexed by accident year i and development year j, both
/// 1-based; exactly the staircase i + j <= n + 1 is observed. Every observed
/// cell is strictly positive and n >= 3. Immutable after construction, so
/// instances can be shared freely across threads.
class Triangle {
public:
    /// rows[i-1] must hold exactly n-i+1 strictly positive values.
    static Triangle from_rows(std::vector<std::vector<double>> rows, std::string label = {});

    /// Parses the triangle CSV format: header "dev,1,2,...,n", then one line
    /// "i,v1,...,v{n-i+1}" per accident year in order.
    static Triangle parse_csv(std::string_view text, std::string label = {});

    int size() const noexcept { return n_; }
    int row_length(int i) const;
    double at(int i, int j) const;
    const std::string& label() const noexcept { return label_; }

    /// (i, C_{i,n-i+1}) for i = 1..n.
    std::vector<std::pair<int, double>> latest_diagonal() const;
    std::vector<double> diagonal_values() const;

    /// Serializes back to the CSV format; round-trips exactly
    /// (parse_csv(to_csv()) compares equal).
    std::string to_csv() const;

    /// Cell-wise equality; the label is metadata and not compared.
    friend bool operator==(const Triangle& a, const Triangle& b) {
        return a.n_ == b.n_ && a.rows_ == b.rows_;
    }

private:
    Triangle(int n, std::vector<std::vector<double>> rows, std::string label);

    int n_ = 0;
    std::vector<std::vector<double>> rows_;
    std::string label_;
};

/// Embedded datasets: "taylor_ashe" (n = 10) and "mortgage" (n = 9).
Triangle builtin_dataset(std::string_view name);
std::vector<std::string> builtin_dataset_names();

}  // namespace ctreserve
