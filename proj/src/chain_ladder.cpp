#include "ctreserve/chain_ladder.hpp"

#include <cmath>
#include <stdexcept>

namespace ctreserve {

std::vector<double> dev_factors(const Triangle& t) {
    const int n = t.size();
    std::vector<double> factors(static_cast<std::size_t>(n - 1));
    for (int j = 1; j <= n - 1; ++j) {
        double num = 0.0, den = 0.0;
        for (int i = 1; i <= n - j; ++i) {
            num += t.at(i, j + 1);
            den += t.at(i, j);
        }
        factors[static_cast<std::size_t>(j - 1)] = num / den;
    }
    return factors;
}

std::vector<double> sigma2(const Triangle& t, std::span<const double> factors) {
    const int n = t.size();
    if (static_cast<int>(factors.size()) != n - 1) {
        throw std::invalid_argument("sigma2: need n-1 development factors");
    }
    std::vector<double> out(static_cast<std::size_t>(n - 2));
    for (int j = 1; j <= n - 2; ++j) {
        double acc = 0.0;
        for (int i = 1; i <= n - j; ++i) {
            const double c = t.at(i, j);
            const double dev = t.at(i, j + 1) / c - factors[static_cast<std::size_t>(j - 1)];
            acc += c * dev * dev;
        }
        out[static_cast<std::size_t>(j - 1)] = acc / static_cast<double>(n - j - 1);
    }
    return out;
}

double tail_sigma2(std::span<const double> sigma2_head) {
    if (sigma2_head.size() < 2) {
        throw std::invalid_argument("tail_sigma2: need Sigma^2 for the last two estimable years");
    }
    const double s2_last = sigma2_head[sigma2_head.size() - 1];   // Sigma^2_{n-2}
    const double s2_prev = sigma2_head[sigma2_head.size() - 2];   // Sigma^2_{n-3}
    const double sd_last = std::sqrt(s2_last);
    const double sd_prev = std::sqrt(s2_prev);
    if (sd_prev == 0.0) {
        // 0/0 ratio, but both remaining candidates are already 0
        return 0.0;
    }
    const double sd_tail = std::min(std::min(s2_last / sd_prev, sd_prev), sd_last);
    return sd_tail * sd_tail;
}

DevParams estimate_dev_params(const Triangle& t) {
    DevParams p;
    p.factors = dev_factors(t);
    p.sigma2 = sigma2(t, p.factors);
    p.sigma2.push_back(tail_sigma2(p.sigma2));
    p.tail_from_min_rule = true;
    return p;
}

ReserveSummary ultimates_and_reserve(const Triangle& t, std::span<const double> factors) {
    const int n = t.size();
    if (static_cast<int>(factors.size()) != n - 1) {
        throw std::invalid_argument("ultimates_and_reserve: need n-1 development factors");
    }
    ReserveSummary out;
    out.ultimates.resize(static_cast<std::size_t>(n));
    out.reserves.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double latest = t.at(i, n - i + 1);
        double ult = latest;
        for (int k = n - i + 1; k <= n - 1; ++k) {
            ult *= factors[static_cast<std::size_t>(k - 1)];
        }
        out.ultimates[static_cast<std::size_t>(i - 1)] = ult;
        out.reserves[static_cast<std::size_t>(i - 1)] = ult - latest;
        if (i >= 2) out.total += ult - latest;
    }
    return out;
}

MsepResult mack_msep(const Triangle& t, const DevParams& p) {
    const int n = t.size();
    if (static_cast<int>(p.factors.size()) != n - 1 ||
        static_cast<int>(p.sigma2.size()) != n - 1) {
        throw std::invalid_argument("mack_msep: need full factors and sigma2 including the tail");
    }
    // column sums S_k over the rows that observe development year k+1
    std::vector<double> col_sum(static_cast<std::size_t>(n - 1));
    for (int k = 1; k <= n - 1; ++k) {
        double s = 0.0;
        for (int m = 1; m <= n - k; ++m) s += t.at(m, k);
        col_sum[static_cast<std::size_t>(k - 1)] = s;
    }

    MsepResult out;
    out.per_year.resize(static_cast<std::size_t>(n));
    std::vector<double> ult(static_cast<std::size_t>(n + 1), 0.0);
    std::vector<double> cross(static_cast<std::size_t>(n + 1), 0.0);
    for (int i = 2; i <= n; ++i) {
        double chat = t.at(i, n - i + 1);
        double acc = 0.0;
        double cross_acc = 0.0;
        for (int k = n - i + 1; k <= n - 1; ++k) {
            const double fk = p.factors[static_cast<std::size_t>(k - 1)];
            const double s2k = p.sigma2[static_cast<std::size_t>(k - 1)];
            const double sk = col_sum[static_cast<std::size_t>(k - 1)];
            acc += (s2k / (fk * fk)) * (1.0 / chat + 1.0 / sk);
            cross_acc += 2.0 * s2k / (fk * fk) / sk;
            chat *= fk;
        }
        ult[static_cast<std::size_t>(i)] = chat;
        cross[static_cast<std::size_t>(i)] = cross_acc;
        out.per_year[static_cast<std::size_t>(i - 1)] = chat * chat * acc;
        out.total += out.per_year[static_cast<std::size_t>(i - 1)];
    }
    double tail_ult = 0.0;  // sum of ultimates for years > i
    for (int i = n; i >= 2; --i) {
        out.total += ult[static_cast<std::size_t>(i)] * tail_ult * cross[static_cast<std::size_t>(i)];
        tail_ult += ult[static_cast<std::size_t>(i)];
    }
    return out;
}

Moments propagate_moments(double c_s, int s, int j, const DevParams& p) {
    const int n = static_cast<int>(p.factors.size()) + 1;
    if (s < 1 || j < s || j > n) {
        throw std::out_of_range("propagate_moments: need 1 <= s <= j <= n");
    }
    Moments out{c_s, 0.0};
    double mean_to_k = 1.0;  // prod_{l=s}^{k-1} F_l
    double var_acc = 0.0;
    for (int k = s; k <= j - 1; ++k) {
        double fwd2 = 1.0;  // prod_{l=k+1}^{j-1} F_l^2
        for (int l = k + 1; l <= j - 1; ++l) {
            const double fl = p.factors[static_cast<std::size_t>(l - 1)];
            fwd2 *= fl * fl;
        }
        var_acc += fwd2 * p.sigma2[static_cast<std::size_t>(k - 1)] * mean_to_k;
        mean_to_k *= p.factors[static_cast<std::size_t>(k - 1)];
    }
    out.mean = mean_to_k * c_s;
    out.variance = var_acc * c_s;
    return out;
}

}  // namespace ctreserve
