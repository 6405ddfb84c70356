#include "ctreserve/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>

namespace ctreserve {

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t count = sorted.size();
    const double h = (static_cast<double>(count) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= count) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

double empirical_quantile(std::span<const double> samples, double p) {
    if (samples.empty()) throw std::invalid_argument("empirical_quantile: empty sample set");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("empirical_quantile: p outside [0, 1]");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, p);
}

Histogram make_histogram(std::span<const double> samples, int bins) {
    if (samples.empty()) throw std::invalid_argument("histogram: empty sample set");
    if (bins < 1) throw std::invalid_argument("histogram: need at least one bin");
    auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    double lo = *lo_it, hi = *hi_it;
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    Histogram h;
    h.edges.resize(static_cast<std::size_t>(bins) + 1);
    const double width = (hi - lo) / bins;
    for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = lo + width * b;
    h.edges.back() = hi;  // exact upper cover
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (const double x : samples) {
        auto b = static_cast<std::size_t>((x - lo) / width);
        if (b >= h.counts.size()) b = h.counts.size() - 1;  // x == max
        ++h.counts[b];
    }
    return h;
}

Histogram make_histogram(std::span<const double> samples, std::span<const double> edges) {
    if (samples.empty()) throw std::invalid_argument("histogram: empty sample set");
    if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end())) {
        throw std::invalid_argument("histogram: need at least two sorted edges");
    }
    Histogram h;
    h.edges.assign(edges.begin(), edges.end());
    h.counts.assign(edges.size() - 1, 0);
    for (const double x : samples) {
        if (x < edges.front() || x > edges.back()) {
            throw std::invalid_argument("histogram: sample outside the explicit edges");
        }
        auto it = std::upper_bound(edges.begin(), edges.end(), x);
        std::size_t b = static_cast<std::size_t>(it - edges.begin());
        b = b == 0 ? 0 : b - 1;
        if (b >= h.counts.size()) b = h.counts.size() - 1;
        ++h.counts[b];
    }
    return h;
}

DistributionSummary summarize(std::span<const double> samples, double r_hat,
                              std::span<const double> probs, int bins) {
    if (samples.empty()) throw std::invalid_argument("summarize: empty sample set");
    if (!(r_hat > 0.0)) throw std::invalid_argument("summarize: R_hat must be positive");

    DistributionSummary s;
    s.count = samples.size();
    double acc = 0.0;
    for (const double x : samples) acc += x;
    s.mean = acc / static_cast<double>(s.count);
    double ss = 0.0;
    for (const double x : samples) ss += (x - s.mean) * (x - s.mean);
    s.sd = s.count > 1 ? std::sqrt(ss / static_cast<double>(s.count - 1)) : 0.0;
    s.msep_pct = 100.0 * s.sd / r_hat;

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    s.quantiles.reserve(probs.size());
    for (const double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("summarize: p outside [0, 1]");
        s.quantiles.emplace_back(p, quantile_sorted(sorted, p));
    }
    s.q995_excess_pct = 100.0 * (quantile_sorted(sorted, 0.995) - r_hat) / r_hat;
    s.histogram = make_histogram(samples, bins);
    return s;
}

double parametric_quantile(const ParametricReserve& pr, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("parametric_quantile: p outside (0, 1)");
    if (pr.degenerate) return pr.mean;
    if (pr.family == ParametricReserve::Family::lognormal) {
        const boost::math::normal_distribution<double> unit(0.0, 1.0);
        return std::exp(pr.log_location + std::sqrt(pr.log_scale2) * boost::math::quantile(unit, p));
    }
    const boost::math::gamma_distribution<double> g(pr.shape, 1.0 / pr.rate);
    return boost::math::quantile(g, p);
}

std::vector<ComparisonRow> comparison_table(const Triangle& t, const BootstrapConfig& cfg) {
    const DevParams p = estimate_dev_params(t);
    const ReserveSummary rs = ultimates_and_reserve(t, p.factors);
    const MsepResult ms = mack_msep(t, p);
    const double r_hat = rs.total;
    if (!(r_hat > 0.0)) throw std::invalid_argument("comparison_table: R_hat must be positive");

    std::vector<ComparisonRow> rows;
    const auto pr = fit_parametric(t, ParametricReserve::Family::lognormal);
    rows.push_back({"Mack Log-normal", 100.0 * std::sqrt(ms.total) / r_hat,
                    100.0 * (parametric_quantile(pr, 0.995) - r_hat) / r_hat});

    const std::vector<double> no_probs;
    for (const auto& [method, name] :
         {std::pair{BootstrapMethod::mack_residual, "Mack Bootstrap"},
          std::pair{BootstrapMethod::time_series, "Time series Bootstrap"},
          std::pair{BootstrapMethod::ct, "Continuous-time Bootstrap"}}) {
        BootstrapConfig run_cfg = cfg;
        run_cfg.method = method;
        const BootstrapResult res = run_bootstrap(t, run_cfg);
        const DistributionSummary s = summarize(res.samples, r_hat, no_probs, 1);
        rows.push_back({name, s.msep_pct, s.q995_excess_pct});
    }
    return rows;
}

}  // namespace ctreserve
