#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ctreserve/chain_ladder.hpp"
#include "ctreserve/triangle.hpp"

namespace ctreserve {

enum class BootstrapMethod { ct, mack_residual, time_series };

/// What to do when a Gaussian chaining step produces a negative cell.
/// The continuous-time method never produces one, so it ignores this.
enum class NegPolicy { clamp_zero, drop_replicate };

/// How the time-series method draws its replicate parameters: resimulate
/// the observed transitions and re-estimate, or draw (F^m, Sigma^m) from
/// their exact sampling distributions directly.
enum class TsParamMode { resample, direct };

struct BootstrapConfig {
    BootstrapMethod method = BootstrapMethod::ct;
    std::size_t replicates = 100'000;  // M
    std::uint64_t seed = 42;
    NegPolicy neg_policy = NegPolicy::clamp_zero;
    TsParamMode ts_param_mode = TsParamMode::direct;
    unsigned threads = 0;  // 0 = hardware concurrency; never affects results
};

/// Simulated total reserves, in replicate order. samples.size() + dropped
/// == replicates. The counters cover the lower-triangle chaining step:
/// zero_clamped counts cells set to zero under clamp_zero, and
/// negative_replicates counts replicates that produced at least one
/// negative cell before the policy was applied.
struct BootstrapResult {
    std::vector<double> samples;
    std::size_t dropped = 0;
    std::size_t zero_clamped = 0;
    std::size_t negative_replicates = 0;
    BootstrapConfig config;
};

BootstrapResult run_bootstrap(const Triangle& t, const BootstrapConfig& cfg);

/// Pearson residuals (C_{i,j+1} - F_j C_{i,j}) / (Sigma_j sqrt(C_{i,j}))
/// over every observed transition of a column with Sigma_j > 0, in
/// column-major order. This is the resampling pool of the Mack bootstrap.
std::vector<double> pearson_residuals(const Triangle& t, const DevParams& p);

/// Moment-matched parametric reserve distribution: mean = chain-ladder
/// R_hat, variance = Mack total MSEP. Degenerate (point mass at the mean)
/// when the variance is zero.
struct ParametricReserve {
    enum class Family { lognormal, gamma };

    Family family = Family::lognormal;
    double mean = 0.0;
    double variance = 0.0;
    bool degenerate = false;

    double log_location = 0.0;  // lognormal
    double log_scale2 = 0.0;
    double shape = 0.0;  // gamma, rate parameterization
    double rate = 0.0;
};

ParametricReserve fit_parametric(const Triangle& t, ParametricReserve::Family family);

/// Shared step-3 kernel: chains each accident year from its diagonal value
/// through one-step transitions and returns R = sum_i (C_{i,n} - diagonal_i).
/// step(j, c) draws C_{j+1} conditional on C_j = c for development year j
/// (1-based index of the column being left).
template <class StepSampler>
double simulate_reserve(std::span<const double> diagonal, StepSampler&& step) {
    const int n = static_cast<int>(diagonal.size());
    double total = 0.0;
    for (int i = 2; i <= n; ++i) {
        double c = diagonal[static_cast<std::size_t>(i - 1)];
        for (int j = n - i + 1; j <= n - 1; ++j) {
            c = step(j, c);
        }
        total += c - diagonal[static_cast<std::size_t>(i - 1)];
    }
    return total;
}

}  // namespace ctreserve
