#pragma once

// Report assembly for the command-line tool: one JSON document per run
// ({manifest, estimates, summary, histogram, diagnostics}), plus text and
// CSV renderings of the same content.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctreserve/analytics.hpp"
#include "ctreserve/bootstrap.hpp"
#include "ctreserve/chain_ladder.hpp"
#include "ctreserve/triangle.hpp"

namespace ctreserve::report {

struct Manifest {
    std::string command;
    std::string dataset;  // builtin name, empty when a file was used
    std::string file;
    BootstrapConfig config;
    std::vector<double> probs;
    int bins = 100;
    std::string version;
    double duration_seconds = 0.0;
};

struct Estimates {
    int n = 0;
    DevParams params;
    ReserveSummary reserves;
    MsepResult msep;
};

struct ZeroMassRow {
    int year = 0;
    double start = 0.0;
    double exponent = 0.0;
    double probability = 0.0;
};

Estimates compute_estimates(const Triangle& t);

/// First-year absorption probabilities: the fitted (f_1, sigma^2_1)
/// dynamics applied to every accident year's first-column value.
std::vector<ZeroMassRow> zero_mass_diagnostics(const Triangle& t);

nlohmann::json manifest_json(const Manifest& m);
nlohmann::json estimates_json(const Estimates& e);
nlohmann::json summary_json(const DistributionSummary& s, const BootstrapResult& res);
nlohmann::json histogram_json(const Histogram& h);
nlohmann::json zero_mass_json(const std::vector<ZeroMassRow>& rows);
nlohmann::json comparison_json(const std::vector<ComparisonRow>& rows);

std::string method_name(BootstrapMethod m);

void print_estimates_text(const Triangle& t, const Estimates& e);
void print_summary_text(const DistributionSummary& s, const BootstrapResult& res, double r_hat);
void print_comparison_text(const std::vector<ComparisonRow>& rows, double gamma_excess_pct);
void print_zero_mass_text(const std::vector<ZeroMassRow>& rows);

std::string estimates_csv(const Estimates& e);
std::string summary_csv(const DistributionSummary& s, const std::string& method);
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace ctreserve::report
