#include "doctest.h"

#include <functional>
#include <string>
#include <vector>

#include "ctreserve/rng.hpp"
#include "ctreserve/triangle.hpp"

using ctreserve::builtin_dataset;
using ctreserve::RandomStream;
using ctreserve::Triangle;
using ctreserve::TriangleError;
using Kind = TriangleError::Kind;

namespace {

Kind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const TriangleError& e) {
        return e.kind();
    }
    FAIL("expected a TriangleError");
    return Kind::bad_header;
}

}  // namespace

TEST_CASE("builtin datasets match the published tables") {
    const Triangle ta = builtin_dataset("taylor_ashe");
    CHECK(ta.size() == 10);
    CHECK(ta.at(1, 1) == 357848.0);
    CHECK(ta.at(8, 3) == 2864494.0);
    CHECK(ta.at(2, 9) == 5339085.0);
    CHECK(ta.at(10, 1) == 344014.0);
    CHECK(ta.label() == "taylor_ashe");

    const Triangle mg = builtin_dataset("mortgage");
    CHECK(mg.size() == 9);
    CHECK(mg.at(9, 1) == 13121.0);
    CHECK(mg.at(1, 9) == 1950105.0);
    CHECK(mg.at(8, 1) == 24983.0);

    CHECK_THROWS_AS(builtin_dataset("foo"), TriangleError);
    CHECK(kind_of([] { builtin_dataset("foo"); }) == Kind::unknown_dataset);
}

TEST_CASE("checksums of the embedded tables") {
    // coarse but effective: whole-triangle sums frozen from the source tables
    double sum_ta = 0.0;
    const Triangle ta = builtin_dataset("taylor_ashe");
    for (int i = 1; i <= ta.size(); ++i)
        for (int j = 1; j <= ta.row_length(i); ++j) sum_ta += ta.at(i, j);
    CHECK(sum_ta == 140447510.0);

    double sum_mg = 0.0;
    const Triangle mg = builtin_dataset("mortgage");
    for (int i = 1; i <= mg.size(); ++i)
        for (int j = 1; j <= mg.row_length(i); ++j) sum_mg += mg.at(i, j);
    CHECK(sum_mg == 98913964.0);
}

TEST_CASE("latest diagonal") {
    const Triangle ta = builtin_dataset("taylor_ashe");
    const auto diag = ta.latest_diagonal();
    REQUIRE(diag.size() == 10);
    CHECK(diag.front() == std::pair{1, 3901463.0});
    CHECK(diag.back() == std::pair{10, 344014.0});
}

TEST_CASE("cell access is staircase-bounded") {
    const Triangle ta = builtin_dataset("taylor_ashe");
    CHECK(ta.row_length(3) == 8);
    CHECK_THROWS_AS(ta.at(3, 9), std::out_of_range);
    CHECK_THROWS_AS(ta.at(0, 1), std::out_of_range);
    CHECK_THROWS_AS(ta.at(11, 1), std::out_of_range);
}

TEST_CASE("csv round trip") {
    for (const auto& name : {"taylor_ashe", "mortgage"}) {
        const Triangle t = builtin_dataset(name);
        CHECK(Triangle::parse_csv(t.to_csv()) == t);
    }

    // non-integer cells round-trip bit-exactly too
    RandomStream rng(2024, 0);
    for (int rep = 0; rep < 25; ++rep) {
        const int n = 3 + static_cast<int>(rng.uniform_index(7));
        std::vector<std::vector<double>> rows;
        for (int i = 1; i <= n; ++i) {
            std::vector<double> row;
            for (int j = 1; j <= n - i + 1; ++j) row.push_back(1e-3 + 1e6 * rng.uniform_pos());
            rows.push_back(std::move(row));
        }
        const Triangle t = Triangle::from_rows(std::move(rows), "random");
        CHECK(Triangle::parse_csv(t.to_csv()) == t);
    }
}

TEST_CASE("parse accepts the documented format") {
    const Triangle t = Triangle::parse_csv("dev,1,2,3\r\n1,10.5,20,30\r\n2,11,21\r\n3,12\r\n");
    CHECK(t.size() == 3);
    CHECK(t.at(1, 1) == 10.5);
    CHECK(t.at(3, 1) == 12.0);
}

TEST_CASE("parse rejects malformed input with the offending cell") {
    // too small
    CHECK(kind_of([] { Triangle::parse_csv("dev,1\n1,100\n"); }) == Kind::too_small);
    // zero cell
    const auto zero = [] { Triangle::parse_csv("dev,1,2,3\n1,10,0,30\n2,11,21\n3,12\n"); };
    CHECK(kind_of(zero) == Kind::non_positive);
    try {
        zero();
    } catch (const TriangleError& e) {
        CHECK(e.row() == 1);
        CHECK(e.col() == 2);
        CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
    }
    // negative cell
    CHECK(kind_of([] { Triangle::parse_csv("dev,1,2,3\n1,10,20,30\n2,-11,21\n3,12\n"); }) ==
          Kind::non_positive);
    // non-numeric
    CHECK(kind_of([] { Triangle::parse_csv("dev,1,2,3\n1,10,x,30\n2,11,21\n3,12\n"); }) ==
          Kind::non_numeric);
    // short row: missing cell inside the staircase
    CHECK(kind_of([] { Triangle::parse_csv("dev,1,2,3\n1,10,20\n2,11,21\n3,12\n"); }) ==
          Kind::missing_cell);
    // long row: cell below the diagonal
    CHECK(kind_of([] { Triangle::parse_csv("dev,1,2,3\n1,10,20,30\n2,11,21,99\n3,12\n"); }) ==
          Kind::extra_cell);
    // bad header
    CHECK(kind_of([] { Triangle::parse_csv("years,1,2,3\n1,10,20,30\n2,11,21\n3,12\n"); }) ==
          Kind::bad_header);
    CHECK(kind_of([] { Triangle::parse_csv("dev,1,5,3\n1,10,20,30\n2,11,21\n3,12\n"); }) ==
          Kind::bad_header);
    // missing row
    CHECK(kind_of([] { Triangle::parse_csv("dev,1,2,3\n1,10,20,30\n2,11,21\n"); }) ==
          Kind::row_length);
    // wrong accident-year index
    CHECK(kind_of([] { Triangle::parse_csv("dev,1,2,3\n1,10,20,30\n3,11,21\n2,12\n"); }) ==
          Kind::row_length);
}

TEST_CASE("from_rows enforces the staircase") {
    using Rows = std::vector<std::vector<double>>;
    CHECK(kind_of([] { Triangle::from_rows(Rows{{1, 2}, {3}}); }) == Kind::too_small);
    CHECK(kind_of([] { Triangle::from_rows(Rows{{1, 2, 3}, {4, 5, 6}, {7}}); }) ==
          Kind::extra_cell);
    CHECK(kind_of([] { Triangle::from_rows(Rows{{1, 2, 3}, {4}, {7}}); }) == Kind::missing_cell);
}
