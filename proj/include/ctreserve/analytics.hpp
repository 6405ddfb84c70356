#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctreserve/bootstrap.hpp"
#include "ctreserve/triangle.hpp"

namespace ctreserve {

struct Histogram {
    std::vector<double> edges;        // bins + 1, covering [min, max]
    std::vector<std::size_t> counts;  // sums to the sample count
};

/// Distribution summary in the reporting convention of the comparison
/// tables: spread and tail quantiles expressed in percent of R_hat.
struct DistributionSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double sd = 0.0;        // unbiased (N-1) divisor
    double msep_pct = 0.0;  // 100 * sd / R_hat
    std::vector<std::pair<double, double>> quantiles;  // (p, Q(p))
    double q995_excess_pct = 0.0;  // 100 * (Q(0.995) - R_hat) / R_hat
    Histogram histogram;
};

/// Empirical quantile, type-7 rule: linear interpolation between order
/// statistics at h = (N-1)p. Sorts a private copy.
double empirical_quantile(std::span<const double> samples, double p);

DistributionSummary summarize(std::span<const double> samples, double r_hat,
                              std::span<const double> probs, int bins = 100);

Histogram make_histogram(std::span<const double> samples, int bins);
Histogram make_histogram(std::span<const double> samples, std::span<const double> edges);

/// Exact quantile of a fitted parametric reserve distribution.
double parametric_quantile(const ParametricReserve& pr, double p);

struct ComparisonRow {
    std::string method;
    double msep_pct = 0.0;
    double q995_excess_pct = 0.0;
};

/// The four-method comparison: analytic Mack/lognormal row first, then the
/// three bootstrap estimators run with cfg's replicate count and seed.
std::vector<ComparisonRow> comparison_table(const Triangle& t, const BootstrapConfig& cfg);

}  // namespace ctreserve
