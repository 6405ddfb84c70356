#pragma once

#include <span>
#include <vector>

#include "ctreserve/triangle.hpp"

namespace ctreserve {

/// Chain-ladder parameters per development year j = 1..n-1.
/// factors[j-1] is F_j (> 0), sigma2[j-1] is Sigma^2_j (>= 0).
/// The last sigma2 entry is not estimable from data and is filled by the
/// min-rule tail extrapolation; tail_from_min_rule records that.
struct DevParams {
    std::vector<double> factors;
    std::vector<double> sigma2;
    bool tail_from_min_rule = false;
};

struct ReserveSummary {
    std::vector<double> ultimates;  // size n
    std::vector<double> reserves;   // size n, reserves[0] == 0
    double total = 0.0;
};

struct MsepResult {
    std::vector<double> per_year;  // size n, per_year[0] == 0
    double total = 0.0;            // includes cross-year covariance terms
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// F_j = sum_i C_{i,j+1} / sum_i C_{i,j} over the n-j observed pairs.
std::vector<double> dev_factors(const Triangle& t);

/// Sigma^2_j = 1/(n-j-1) sum_i C_{i,j} (C_{i,j+1}/C_{i,j} - F_j)^2,
/// defined for j = 1..n-2.
std::vector<double> sigma2(const Triangle& t, std::span<const double> factors);

/// Min-rule tail: Sigma_{n-1} = min(Sigma^2_{n-2}/Sigma_{n-3}, Sigma_{n-3},
/// Sigma_{n-2}) on the standard-deviation scale; returns its square.
/// Needs at least two entries (n >= 4). A zero Sigma_{n-3} makes the ratio
/// 0/0 but both alternatives vanish, so the tail is 0.
double tail_sigma2(std::span<const double> sigma2_head);

/// dev_factors + sigma2 + min-rule tail in one call.
DevParams estimate_dev_params(const Triangle& t);

ReserveSummary ultimates_and_reserve(const Triangle& t, std::span<const double> factors);

/// Mack's conditional MSEP estimator, per accident year and in total.
/// Forecast values inside the formula use the same chained factors as
/// ultimates_and_reserve.
MsepResult mack_msep(const Triangle& t, const DevParams& p);

/// First two moments of C_j conditional on C_s = c_s under the discrete
/// chain-ladder dynamics, 1 <= s <= j <= n. Empty products are 1, empty
/// sums 0.
Moments propagate_moments(double c_s, int s, int j, const DevParams& p);

}  // namespace ctreserve
