#include "ctreserve/bootstrap.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ctreserve/ct_model.hpp"
#include "ctreserve/rng.hpp"

namespace ctreserve {

namespace {

// Above this intensity the compound law's coefficient of variation
// sqrt(2/lambda) is below double accumulation noise and the Poisson count
// exceeds integer resolution; the transition degenerates to its mean.
constexpr double kLambdaCap = 1e18;

// One-step exact law for a development year, lambda = lambda_per_unit * C.
struct CtStep {
    double lambda_per_unit = 0.0;
    double beta = 0.0;
    double growth = 0.0;  // conditional mean multiplier e^{f}
    bool stochastic = false;
};

CtStep make_ct_step(double factor, double s2) {
    CtStep st;
    if (!(factor > 0.0)) {
        // a fully zero simulated column: everything downstream is absorbed
        return st;
    }
    st.growth = factor;
    if (s2 > 0.0) {
        // Lemma smallf followed by the transition law collapses to
        // beta = 2F/Sigma^2, lambda = beta F C.
        st.beta = 2.0 * factor / s2;
        st.lambda_per_unit = st.beta * factor;
        st.stochastic = true;
    }
    return st;
}

struct Prepared {
    int n = 0;
    DevParams base;
    std::vector<std::vector<double>> columns;  // observed C_{.,j}, j = 1..n-1
    std::vector<double> col_sums;              // S_j
    std::vector<double> diagonal;              // C_{i,n-i+1}, i = 1..n
    std::vector<CtStep> ct_steps;              // step-1 laws from point estimates
    std::vector<double> ts_factor_sd;          // sd of the direct F^m_j draw
    std::vector<double> residual_pool;         // Pearson residuals (mack)
    std::size_t transitions = 0;               // n(n-1)/2 observed transitions
};

Prepared prepare(const Triangle& t) {
    Prepared prep;
    const int n = t.size();
    prep.n = n;
    prep.base = estimate_dev_params(t);
    prep.diagonal = t.diagonal_values();
    prep.columns.resize(static_cast<std::size_t>(n - 1));
    prep.col_sums.resize(static_cast<std::size_t>(n - 1));
    prep.ct_steps.resize(static_cast<std::size_t>(n - 1));
    prep.ts_factor_sd.resize(static_cast<std::size_t>(n - 1));
    for (int j = 1; j <= n - 1; ++j) {
        auto& col = prep.columns[static_cast<std::size_t>(j - 1)];
        double sum = 0.0;
        for (int i = 1; i <= n - j; ++i) {
            col.push_back(t.at(i, j));
            sum += t.at(i, j);
        }
        prep.col_sums[static_cast<std::size_t>(j - 1)] = sum;
        prep.transitions += col.size();

        const double factor = prep.base.factors[static_cast<std::size_t>(j - 1)];
        const double s2 = prep.base.sigma2[static_cast<std::size_t>(j - 1)];
        prep.ct_steps[static_cast<std::size_t>(j - 1)] = make_ct_step(factor, s2);
        prep.ts_factor_sd[static_cast<std::size_t>(j - 1)] = std::sqrt(s2 / sum);
    }
    prep.residual_pool = pearson_residuals(t, prep.base);
    return prep;
}

struct ReplicateOutcome {
    double reserve = 0.0;
    std::uint32_t zero_clamped = 0;
    bool dropped = false;
    bool touched_negative = false;
};

struct Workspace {
    std::vector<double> draws;    // step-1 simulated next-column values
    std::vector<double> factors;  // replicate F^m
    std::vector<double> sigma2;   // replicate (Sigma^m)^2, tail included
    std::vector<CtStep> steps;    // replicate laws for the ct chaining

    explicit Workspace(const Prepared& prep)
        : draws(prep.transitions),
          factors(static_cast<std::size_t>(prep.n - 1)),
          sigma2(static_cast<std::size_t>(prep.n - 1)),
          steps(static_cast<std::size_t>(prep.n - 1)) {}
};

// Eq. (1) on the pairs (observed C_{i,j}, simulated C^m_{i,j+1}), plus the
// min-rule tail.
void reestimate(const Prepared& prep, Workspace& ws) {
    const int n = prep.n;
    std::size_t idx = 0;
    for (int j = 1; j <= n - 1; ++j) {
        const auto& col = prep.columns[static_cast<std::size_t>(j - 1)];
        double sum = 0.0;
        for (std::size_t i = 0; i < col.size(); ++i) sum += ws.draws[idx + i];
        const double factor = sum / prep.col_sums[static_cast<std::size_t>(j - 1)];
        ws.factors[static_cast<std::size_t>(j - 1)] = factor;
        if (j <= n - 2) {
            double acc = 0.0;
            for (std::size_t i = 0; i < col.size(); ++i) {
                const double dev = ws.draws[idx + i] / col[i] - factor;
                acc += col[i] * dev * dev;
            }
            ws.sigma2[static_cast<std::size_t>(j - 1)] = acc / static_cast<double>(n - j - 1);
        }
        idx += col.size();
    }
    ws.sigma2[static_cast<std::size_t>(n - 2)] =
        tail_sigma2(std::span<const double>(ws.sigma2).first(static_cast<std::size_t>(n - 2)));
}

double draw_exact(const CtStep& st, double c, RandomStream& rng) {
    if (!st.stochastic || c <= 0.0) return st.growth * c;
    const double lambda = st.lambda_per_unit * c;
    if (!(lambda < kLambdaCap)) return st.growth * c;
    const std::uint64_t count = rng.poisson(lambda);
    return count == 0 ? 0.0 : rng.gamma(static_cast<double>(count), st.beta);
}

ReplicateOutcome ct_replicate(const Prepared& prep, Workspace& ws, RandomStream& rng) {
    // step 1: one exact draw per observed transition, anchored at the
    // observed cell (not chained)
    std::size_t idx = 0;
    for (std::size_t j = 0; j < prep.columns.size(); ++j) {
        const CtStep& st = prep.ct_steps[j];
        for (const double c : prep.columns[j]) {
            const double value = draw_exact(st, c, rng);
            assert(value >= 0.0);
            ws.draws[idx++] = value;
        }
    }
    reestimate(prep, ws);
    for (std::size_t j = 0; j < ws.steps.size(); ++j) {
        ws.steps[j] = make_ct_step(ws.factors[j], ws.sigma2[j]);
    }

    // step 2: chain the lower triangle from the observed diagonal
    ReplicateOutcome out;
    out.reserve = simulate_reserve(prep.diagonal, [&](int j, double c) {
        const double value = draw_exact(ws.steps[static_cast<std::size_t>(j - 1)], c, rng);
        assert(value >= 0.0);
        return value;
    });
    return out;
}

void gaussian_chain(const Prepared& prep, Workspace& ws, RandomStream& rng, NegPolicy policy,
                    ReplicateOutcome& out) {
    out.reserve = simulate_reserve(prep.diagonal, [&](int j, double c) {
        if (c <= 0.0) return 0.0;  // frozen at zero after a clamp
        const double mean = ws.factors[static_cast<std::size_t>(j - 1)] * c;
        const double var = ws.sigma2[static_cast<std::size_t>(j - 1)] * c;
        double value = var > 0.0 ? mean + std::sqrt(var) * rng.normal() : mean;
        if (value < 0.0) {
            out.touched_negative = true;
            if (policy == NegPolicy::drop_replicate) {
                out.dropped = true;
            } else {
                ++out.zero_clamped;
            }
            value = 0.0;
        }
        return value;
    });
}

ReplicateOutcome mack_replicate(const Prepared& prep, Workspace& ws, RandomStream& rng,
                                NegPolicy policy) {
    // step 1: resample residuals onto the observed transitions; the draws
    // only feed Eq. (1), negatives stay as drawn
    std::size_t idx = 0;
    for (std::size_t j = 0; j < prep.columns.size(); ++j) {
        const double factor = prep.base.factors[j];
        const double sd = std::sqrt(prep.base.sigma2[j]);
        for (const double c : prep.columns[j]) {
            double value = factor * c;
            if (sd > 0.0) {
                const double r = prep.residual_pool[rng.uniform_index(prep.residual_pool.size())];
                value += sd * std::sqrt(c) * r;
            }
            ws.draws[idx++] = value;
        }
    }
    reestimate(prep, ws);

    ReplicateOutcome out;
    gaussian_chain(prep, ws, rng, policy, out);
    return out;
}

ReplicateOutcome ts_replicate(const Prepared& prep, Workspace& ws, RandomStream& rng,
                              NegPolicy policy, TsParamMode mode) {
    const int n = prep.n;
    if (mode == TsParamMode::direct) {
        for (int j = 1; j <= n - 1; ++j) {
            ws.factors[static_cast<std::size_t>(j - 1)] =
                prep.base.factors[static_cast<std::size_t>(j - 1)] +
                prep.ts_factor_sd[static_cast<std::size_t>(j - 1)] * rng.normal();
        }
        for (int j = 1; j <= n - 2; ++j) {
            const double dof = static_cast<double>(n - j - 1);
            const double s2 = prep.base.sigma2[static_cast<std::size_t>(j - 1)];
            ws.sigma2[static_cast<std::size_t>(j - 1)] =
                s2 > 0.0 ? s2 * rng.chi_square(dof) / dof : 0.0;
        }
        ws.sigma2[static_cast<std::size_t>(n - 2)] =
            tail_sigma2(std::span<const double>(ws.sigma2).first(static_cast<std::size_t>(n - 2)));
    } else {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < prep.columns.size(); ++j) {
            const double factor = prep.base.factors[j];
            const double s2 = prep.base.sigma2[j];
            for (const double c : prep.columns[j]) {
                double value = factor * c;
                if (s2 > 0.0) value += std::sqrt(s2 * c) * rng.normal();
                ws.draws[idx++] = value;
            }
        }
        reestimate(prep, ws);
    }

    ReplicateOutcome out;
    gaussian_chain(prep, ws, rng, policy, out);
    return out;
}

}  // namespace

std::vector<double> pearson_residuals(const Triangle& t, const DevParams& p) {
    const int n = t.size();
    if (static_cast<int>(p.factors.size()) != n - 1 ||
        static_cast<int>(p.sigma2.size()) != n - 1) {
        throw std::invalid_argument("pearson_residuals: need full factors and sigma2");
    }
    std::vector<double> pool;
    for (int j = 1; j <= n - 1; ++j) {
        const double sd = std::sqrt(p.sigma2[static_cast<std::size_t>(j - 1)]);
        if (!(sd > 0.0)) continue;
        const double factor = p.factors[static_cast<std::size_t>(j - 1)];
        for (int i = 1; i <= n - j; ++i) {
            const double c = t.at(i, j);
            pool.push_back((t.at(i, j + 1) - factor * c) / (sd * std::sqrt(c)));
        }
    }
    return pool;
}

BootstrapResult run_bootstrap(const Triangle& t, const BootstrapConfig& cfg) {
    if (cfg.replicates < 1) {
        throw std::invalid_argument("run_bootstrap: replicate count must be >= 1");
    }
    const Prepared prep = prepare(t);
    const std::size_t total = cfg.replicates;

    std::vector<ReplicateOutcome> outcomes(total);
    auto run_range = [&](std::size_t lo, std::size_t hi) {
        Workspace ws(prep);
        for (std::size_t m = lo; m < hi; ++m) {
            RandomStream rng(cfg.seed, m);
            switch (cfg.method) {
                case BootstrapMethod::ct:
                    outcomes[m] = ct_replicate(prep, ws, rng);
                    break;
                case BootstrapMethod::mack_residual:
                    outcomes[m] = mack_replicate(prep, ws, rng, cfg.neg_policy);
                    break;
                case BootstrapMethod::time_series:
                    outcomes[m] = ts_replicate(prep, ws, rng, cfg.neg_policy, cfg.ts_param_mode);
                    break;
            }
        }
    };

    unsigned workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
    if (workers <= 1) {
        run_range(0, total);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t lo = static_cast<std::size_t>(w) * chunk;
            const std::size_t hi = std::min(lo + chunk, total);
            if (lo >= hi) break;
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    BootstrapResult res;
    res.config = cfg;
    res.samples.reserve(total);
    for (const auto& o : outcomes) {
        if (o.dropped) {
            ++res.dropped;
        } else {
            res.samples.push_back(o.reserve);
        }
        res.zero_clamped += o.zero_clamped;
        if (o.touched_negative) ++res.negative_replicates;
    }
    if (cfg.method == BootstrapMethod::ct) {
        assert(res.dropped == 0 && res.zero_clamped == 0 && res.negative_replicates == 0);
    }
    return res;
}

ParametricReserve fit_parametric(const Triangle& t, ParametricReserve::Family family) {
    const DevParams p = estimate_dev_params(t);
    const ReserveSummary rs = ultimates_and_reserve(t, p.factors);
    const MsepResult ms = mack_msep(t, p);

    ParametricReserve pr;
    pr.family = family;
    pr.mean = rs.total;
    pr.variance = ms.total;
    if (pr.variance <= 0.0) {
        pr.degenerate = true;
        return pr;
    }
    if (!(pr.mean > 0.0)) {
        throw std::invalid_argument("fit_parametric: reserve must be positive to fit a distribution");
    }
    if (family == ParametricReserve::Family::lognormal) {
        pr.log_scale2 = std::log1p(pr.variance / (pr.mean * pr.mean));
        pr.log_location = std::log(pr.mean) - 0.5 * pr.log_scale2;
    } else {
        pr.shape = pr.mean * pr.mean / pr.variance;
        pr.rate = pr.mean / pr.variance;
    }
    return pr;
}

}  // namespace ctreserve
