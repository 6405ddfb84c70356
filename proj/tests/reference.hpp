#pragma once

// Test-only reference implementations, kept deliberately naive and separate
// from the library code paths they cross-check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ctreserve/triangle.hpp"

namespace reference {

// Straight-line chain-ladder estimators from the definition.
inline std::vector<double> dev_factors(const ctreserve::Triangle& t) {
    const int n = t.size();
    std::vector<double> out;
    for (int j = 1; j <= n - 1; ++j) {
        double num = 0.0, den = 0.0;
        for (int i = 1; i <= n - j; ++i) {
            num += t.at(i, j + 1);
            den += t.at(i, j);
        }
        out.push_back(num / den);
    }
    return out;
}

inline std::vector<double> sigma2(const ctreserve::Triangle& t, const std::vector<double>& f) {
    const int n = t.size();
    std::vector<double> out;
    for (int j = 1; j <= n - 2; ++j) {
        double acc = 0.0;
        for (int i = 1; i <= n - j; ++i) {
            const double ratio = t.at(i, j + 1) / t.at(i, j);
            acc += t.at(i, j) * (ratio - f[static_cast<std::size_t>(j - 1)]) *
                   (ratio - f[static_cast<std::size_t>(j - 1)]);
        }
        out.push_back(acc / (n - j - 1));
    }
    return out;
}

inline double min_rule_tail(const std::vector<double>& s2) {
    const double sd_last = std::sqrt(s2[s2.size() - 1]);
    const double sd_prev = std::sqrt(s2[s2.size() - 2]);
    if (sd_prev == 0.0) return 0.0;
    const double m = std::min({s2[s2.size() - 1] / sd_prev, sd_prev, sd_last});
    return m * m;
}

inline double reserve(const ctreserve::Triangle& t, const std::vector<double>& f) {
    const int n = t.size();
    double total = 0.0;
    for (int i = 2; i <= n; ++i) {
        double ult = t.at(i, n - i + 1);
        for (int k = n - i + 1; k <= n - 1; ++k) ult *= f[static_cast<std::size_t>(k - 1)];
        total += ult - t.at(i, n - i + 1);
    }
    return total;
}

// Tower-property recursion for the conditional moments: one step at a time.
inline std::pair<double, double> chained_moments(double c, int s, int j,
                                                 const std::vector<double>& f,
                                                 const std::vector<double>& s2) {
    double mean = c, var = 0.0;
    for (int k = s; k <= j - 1; ++k) {
        const double fk = f[static_cast<std::size_t>(k - 1)];
        const double vk = s2[static_cast<std::size_t>(k - 1)];
        var = fk * fk * var + vk * mean;
        mean = fk * mean;
    }
    return {mean, var};
}

// Composite Simpson quadrature.
inline double simpson(const std::function<double(double)>& fn, double a, double b, int panels) {
    const double h = (b - a) / (2 * panels);
    double acc = fn(a) + fn(b);
    for (int k = 1; k < 2 * panels; ++k) acc += fn(a + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double m4 = 0.0;        // central fourth moment
    std::size_t count = 0;
};

inline SampleStats stats(std::span<const double> xs) {
    SampleStats s;
    s.count = xs.size();
    for (const double x : xs) s.mean += x;
    s.mean /= static_cast<double>(s.count);
    double ss = 0.0, s4 = 0.0;
    for (const double x : xs) {
        const double d = x - s.mean;
        ss += d * d;
        s4 += d * d * d * d;
    }
    s.variance = ss / static_cast<double>(s.count - 1);
    s.m4 = s4 / static_cast<double>(s.count);
    return s;
}

// Standard error of the sample mean / sample variance (delta method).
inline double se_mean(const SampleStats& s) { return std::sqrt(s.variance / s.count); }
inline double se_variance(const SampleStats& s) {
    return std::sqrt(std::max(0.0, s.m4 - s.variance * s.variance) / s.count);
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] <= b[ib]) {
            ++ia;
        } else {
            ++ib;
        }
        const double fa = static_cast<double>(ia) / a.size();
        const double fb = static_cast<double>(ib) / b.size();
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

// Critical value for the two-sample KS test at level alpha.
inline double ks_critical(double alpha, std::size_t na, std::size_t nb) {
    const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    return c * std::sqrt(static_cast<double>(na + nb) / (static_cast<double>(na) * nb));
}

}  // namespace reference
