#include "report.hpp"

#include <cmath>
#include <cstdio>

#include "ctreserve/ct_model.hpp"

namespace ctreserve::report {

namespace {

std::string policy_name(NegPolicy p) { return p == NegPolicy::clamp_zero ? "zero" : "drop"; }
std::string ts_mode_name(TsParamMode m) {
    return m == TsParamMode::direct ? "direct" : "resample";
}

}  // namespace

std::string method_name(BootstrapMethod m) {
    switch (m) {
        case BootstrapMethod::ct: return "ct";
        case BootstrapMethod::mack_residual: return "mack";
        case BootstrapMethod::time_series: return "ts";
    }
    return "?";
}

Estimates compute_estimates(const Triangle& t) {
    Estimates e;
    e.n = t.size();
    e.params = estimate_dev_params(t);
    e.reserves = ultimates_and_reserve(t, e.params.factors);
    e.msep = mack_msep(t, e.params);
    return e;
}

std::vector<ZeroMassRow> zero_mass_diagnostics(const Triangle& t) {
    const CtParams cp = to_ct(estimate_dev_params(t));
    std::vector<ZeroMassRow> rows;
    for (int i = 1; i <= t.size(); ++i) {
        ZeroMassRow row;
        row.year = i;
        row.start = t.at(i, 1);
        if (cp.diffusion2[0] > 0.0) {
            row.exponent = transition_law(row.start, cp.drift[0], cp.diffusion2[0], 1.0).lambda;
            row.probability = std::exp(-row.exponent);
        } else {
            row.exponent = std::numeric_limits<double>::infinity();
            row.probability = 0.0;
        }
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json manifest_json(const Manifest& m) {
    return {
        {"command", m.command},
        {"dataset", m.dataset},
        {"file", m.file},
        {"config",
         {{"method", method_name(m.config.method)},
          {"sims", m.config.replicates},
          {"seed", m.config.seed},
          {"neg_policy", policy_name(m.config.neg_policy)},
          {"ts_param_mode", ts_mode_name(m.config.ts_param_mode)},
          {"threads", m.config.threads},
          {"probs", m.probs},
          {"bins", m.bins}}},
        {"version", m.version},
        {"duration_seconds", m.duration_seconds},
    };
}

nlohmann::json estimates_json(const Estimates& e) {
    return {
        {"n", e.n},
        {"factors", e.params.factors},
        {"sigma2", e.params.sigma2},
        {"tail_from_min_rule", e.params.tail_from_min_rule},
        {"ultimates", e.reserves.ultimates},
        {"reserves", e.reserves.reserves},
        {"total_reserve", e.reserves.total},
        {"msep",
         {{"per_year", e.msep.per_year},
          {"total", e.msep.total},
          {"pct_of_reserve",
           e.reserves.total > 0.0 ? 100.0 * std::sqrt(e.msep.total) / e.reserves.total : 0.0}}},
    };
}

nlohmann::json summary_json(const DistributionSummary& s, const BootstrapResult& res) {
    nlohmann::json quantiles = nlohmann::json::object();
    char key[32];
    for (const auto& [p, q] : s.quantiles) {
        std::snprintf(key, sizeof key, "%g", p);
        quantiles[key] = q;
    }
    return {
        {"count", s.count},
        {"mean", s.mean},
        {"sd", s.sd},
        {"msep_pct", s.msep_pct},
        {"quantiles", quantiles},
        {"q995_excess_pct", s.q995_excess_pct},
        {"dropped", res.dropped},
        {"zero_clamped", res.zero_clamped},
        {"negative_replicates", res.negative_replicates},
    };
}

nlohmann::json histogram_json(const Histogram& h) {
    return {{"edges", h.edges}, {"counts", h.counts}};
}

nlohmann::json zero_mass_json(const std::vector<ZeroMassRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        out.push_back({{"year", r.year},
                       {"start", r.start},
                       {"exponent", r.exponent},
                       {"probability", r.probability}});
    }
    return out;
}

nlohmann::json comparison_json(const std::vector<ComparisonRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        out.push_back({{"method", r.method},
                       {"msep_pct", r.msep_pct},
                       {"q995_excess_pct", r.q995_excess_pct}});
    }
    return out;
}

void print_estimates_text(const Triangle& t, const Estimates& e) {
    std::printf("dataset: %s (n = %d)\n\n", t.label().empty() ? "-" : t.label().c_str(), e.n);
    std::printf("  j        F_j            Sigma^2_j\n");
    for (std::size_t j = 0; j < e.params.factors.size(); ++j) {
        std::printf("%3zu   %10.6f   %18.6f%s\n", j + 1, e.params.factors[j], e.params.sigma2[j],
                    j + 1 == e.params.factors.size() && e.params.tail_from_min_rule
                        ? "  (min-rule tail)"
                        : "");
    }
    std::printf("\n year          latest         ultimate          reserve         msep sd\n");
    const auto diag = t.diagonal_values();
    for (int i = 1; i <= e.n; ++i) {
        std::printf("%5d   %14.2f   %14.2f   %14.2f  %14.2f\n", i,
                    diag[static_cast<std::size_t>(i - 1)],
                    e.reserves.ultimates[static_cast<std::size_t>(i - 1)],
                    e.reserves.reserves[static_cast<std::size_t>(i - 1)],
                    std::sqrt(e.msep.per_year[static_cast<std::size_t>(i - 1)]));
    }
    std::printf("\ntotal reserve R_hat: %.2f\n", e.reserves.total);
    if (e.reserves.total > 0.0) {
        std::printf("sqrt(total MSEP):    %.2f  (%.4f%% of R_hat)\n", std::sqrt(e.msep.total),
                    100.0 * std::sqrt(e.msep.total) / e.reserves.total);
    }
}

void print_summary_text(const DistributionSummary& s, const BootstrapResult& res, double r_hat) {
    std::printf("\nreserve distribution (%zu replicates kept, %zu dropped)\n", s.count,
                res.dropped);
    std::printf("  mean: %.2f   sd: %.2f   sd/R_hat: %.4f%%\n", s.mean, s.sd, s.msep_pct);
    std::printf("  zero-clamped cells: %zu   negative replicates: %zu\n", res.zero_clamped,
                res.negative_replicates);
    std::printf("  quantiles\n");
    for (const auto& [p, q] : s.quantiles) {
        std::printf("    %6.2f%%:  %14.2f   (excess %+.4f%%)\n", 100.0 * p, q,
                    100.0 * (q - r_hat) / r_hat);
    }
    std::printf("  99.5%% excess over R_hat: %.4f%%\n", s.q995_excess_pct);
}

void print_comparison_text(const std::vector<ComparisonRow>& rows, double gamma_excess_pct) {
    std::printf("\n%-28s %16s %20s\n", "method", "sqrt(MSEP) %", "Q(99.5%) excess %");
    for (const auto& r : rows) {
        std::printf("%-28s %16.4f %20.4f\n", r.method.c_str(), r.msep_pct, r.q995_excess_pct);
    }
    std::printf("(Mack row with a Gamma fit instead: %.4f%% excess)\n", gamma_excess_pct);
}

void print_zero_mass_text(const std::vector<ZeroMassRow>& rows) {
    std::printf("\nzero-mass diagnostics: P(absorption at 0 over the first development year)\n");
    std::printf(" year        C_{i,1}       exponent    probability\n");
    for (const auto& r : rows) {
        std::printf("%5d %14.2f %14.4f   %12.6g\n", r.year, r.start, r.exponent, r.probability);
    }
}

std::string estimates_csv(const Estimates& e) {
    char buf[128];
    std::string out = "statistic,method,value\n";
    std::snprintf(buf, sizeof buf, "total_reserve,chain_ladder,%.6f\n", e.reserves.total);
    out += buf;
    std::snprintf(buf, sizeof buf, "msep_total,mack,%.6f\n", e.msep.total);
    out += buf;
    if (e.reserves.total > 0.0) {
        std::snprintf(buf, sizeof buf, "msep_pct,mack,%.4f\n",
                      100.0 * std::sqrt(e.msep.total) / e.reserves.total);
        out += buf;
    }
    return out;
}

std::string summary_csv(const DistributionSummary& s, const std::string& method) {
    char buf[128];
    std::string out = "statistic,method,value\n";
    const auto add = [&](const char* stat, double v) {
        std::snprintf(buf, sizeof buf, "%s,%s,%.6f\n", stat, method.c_str(), v);
        out += buf;
    };
    add("mean", s.mean);
    add("sd", s.sd);
    add("msep_pct", s.msep_pct);
    add("q995_excess_pct", s.q995_excess_pct);
    for (const auto& [p, q] : s.quantiles) {
        std::snprintf(buf, sizeof buf, "quantile_%g,%s,%.6f\n", p, method.c_str(), q);
        out += buf;
    }
    return out;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    char buf[160];
    std::string out = "statistic,method,value\n";
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "msep_pct,%s,%.4f\n", r.method.c_str(), r.msep_pct);
        out += buf;
        std::snprintf(buf, sizeof buf, "q995_excess_pct,%s,%.4f\n", r.method.c_str(),
                      r.q995_excess_pct);
        out += buf;
    }
    return out;
}

}  // namespace ctreserve::report
