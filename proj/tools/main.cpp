#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctreserve/analytics.hpp"
#include "ctreserve/bootstrap.hpp"
#include "ctreserve/chain_ladder.hpp"
#include "ctreserve/triangle.hpp"
#include "ctreserve/version.hpp"
#include "report.hpp"

namespace {

using namespace ctreserve;
namespace fs = std::filesystem;

constexpr int kExitUserError = 2;

struct CommonOpts {
    std::string dataset;
    std::string file;
    std::string format = "text";
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    auto* ds = cmd->add_option("--dataset", opts.dataset, "built-in dataset (taylor_ashe, mortgage)");
    auto* file = cmd->add_option("--file", opts.file, "triangle CSV file");
    ds->excludes(file);
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out_dir, "directory for report.json and data files");
}

Triangle load_triangle(const CommonOpts& opts) {
    if (!opts.dataset.empty()) return builtin_dataset(opts.dataset);
    if (opts.file.empty()) {
        throw std::invalid_argument("one of --dataset or --file is required");
    }
    std::ifstream in(opts.file);
    if (!in) throw std::invalid_argument("cannot open triangle file: " + opts.file);
    std::stringstream ss;
    ss << in.rdbuf();
    return Triangle::parse_csv(ss.str(), fs::path(opts.file).stem().string());
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void write_json_report(const CommonOpts& opts, const nlohmann::json& doc) {
    if (opts.out_dir.empty()) return;
    fs::create_directories(opts.out_dir);
    write_text_file(fs::path(opts.out_dir) / "report.json", doc.dump(2) + "\n");
}

void emit_document(const CommonOpts& opts, const nlohmann::json& doc) {
    if (opts.format == "json") std::printf("%s\n", doc.dump(2).c_str());
    write_json_report(opts, doc);
}

void write_samples(const fs::path& dir, const std::vector<double>& samples) {
    std::ofstream out(dir / "samples.bin", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write samples.bin");
    out.write(reinterpret_cast<const char*>(samples.data()),
              static_cast<std::streamsize>(samples.size() * sizeof(double)));
}

std::string histogram_csv(const Histogram& h) {
    std::string out = "bin_lo,bin_hi,count\n";
    char buf[96];
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu\n", h.edges[b], h.edges[b + 1],
                      h.counts[b]);
        out += buf;
    }
    return out;
}

int cmd_reserve(const CommonOpts& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const Triangle t = load_triangle(opts);
    const auto est = report::compute_estimates(t);

    report::Manifest manifest;
    manifest.command = "reserve";
    manifest.dataset = opts.dataset;
    manifest.file = opts.file;
    manifest.version = std::string(kVersion);
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const nlohmann::json doc = {{"manifest", report::manifest_json(manifest)},
                                {"estimates", report::estimates_json(est)}};
    if (opts.format == "text") report::print_estimates_text(t, est);
    if (opts.format == "csv") std::fputs(report::estimates_csv(est).c_str(), stdout);
    emit_document(opts, doc);
    return 0;
}

struct BootstrapOpts {
    std::string method = "ct";
    std::size_t sims = 100'000;
    std::uint64_t seed = 42;
    std::string neg_policy = "zero";
    std::string ts_mode = "direct";
    std::vector<double> probs = {0.5, 0.75, 0.95, 0.995};
    int bins = 100;
    unsigned threads = 0;
    bool emit_samples = false;
};

BootstrapConfig to_config(const BootstrapOpts& o) {
    BootstrapConfig cfg;
    if (o.method == "ct") {
        cfg.method = BootstrapMethod::ct;
    } else if (o.method == "mack") {
        cfg.method = BootstrapMethod::mack_residual;
    } else {
        cfg.method = BootstrapMethod::time_series;
    }
    if (o.sims == 0) throw std::invalid_argument("--sims must be a positive replicate count");
    cfg.replicates = o.sims;
    cfg.seed = o.seed;
    cfg.neg_policy = o.neg_policy == "drop" ? NegPolicy::drop_replicate : NegPolicy::clamp_zero;
    cfg.ts_param_mode = o.ts_mode == "resample" ? TsParamMode::resample : TsParamMode::direct;
    cfg.threads = o.threads;
    return cfg;
}

void add_bootstrap_opts(CLI::App* cmd, BootstrapOpts& o, bool with_method) {
    if (with_method) {
        cmd->add_option("--method", o.method, "bootstrap method")
            ->check(CLI::IsMember({"ct", "mack", "ts"}))
            ->capture_default_str();
        cmd->add_option("--neg-policy", o.neg_policy, "negative-cell policy for mack/ts")
            ->check(CLI::IsMember({"zero", "drop"}))
            ->capture_default_str();
        cmd->add_option("--ts-mode", o.ts_mode, "ts parameter mode")
            ->check(CLI::IsMember({"direct", "resample"}))
            ->capture_default_str();
    }
    cmd->add_option("--sims", o.sims, "replicate count M")->capture_default_str();
    cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
    cmd->add_option("--probs", o.probs, "report quantiles")->delimiter(',');
    cmd->add_option("--bins", o.bins, "histogram bins")->capture_default_str();
    cmd->add_option("--threads", o.threads, "worker cap (0 = hardware)")->capture_default_str();
}

int cmd_bootstrap(const CommonOpts& opts, const BootstrapOpts& bopts) {
    if (bopts.emit_samples && opts.out_dir.empty()) {
        throw std::invalid_argument("--emit-samples needs --out DIR");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const Triangle t = load_triangle(opts);
    const BootstrapConfig cfg = to_config(bopts);
    const auto est = report::compute_estimates(t);
    if (!(est.reserves.total > 0.0)) {
        throw std::invalid_argument("chain-ladder reserve is zero; nothing to simulate");
    }

    const BootstrapResult res = run_bootstrap(t, cfg);
    const DistributionSummary summary =
        summarize(res.samples, est.reserves.total, bopts.probs, bopts.bins);

    report::Manifest manifest;
    manifest.command = "bootstrap";
    manifest.dataset = opts.dataset;
    manifest.file = opts.file;
    manifest.config = cfg;
    manifest.probs = bopts.probs;
    manifest.bins = bopts.bins;
    manifest.version = std::string(kVersion);
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const nlohmann::json doc = {{"manifest", report::manifest_json(manifest)},
                                {"estimates", report::estimates_json(est)},
                                {"summary", report::summary_json(summary, res)},
                                {"histogram", report::histogram_json(summary.histogram)}};

    if (opts.format == "text") {
        std::printf("method: %s   replicates: %zu   seed: %llu\n",
                    report::method_name(cfg.method).c_str(), cfg.replicates,
                    static_cast<unsigned long long>(cfg.seed));
        std::printf("chain-ladder R_hat: %.2f\n", est.reserves.total);
        report::print_summary_text(summary, res, est.reserves.total);
        std::printf("elapsed: %.2f s\n", manifest.duration_seconds);
    }
    if (opts.format == "csv") {
        std::fputs(report::summary_csv(summary, report::method_name(cfg.method)).c_str(), stdout);
    }
    emit_document(opts, doc);
    if (!opts.out_dir.empty()) {
        fs::create_directories(opts.out_dir);
        write_text_file(fs::path(opts.out_dir) / "histogram.csv",
                        histogram_csv(summary.histogram));
        if (bopts.emit_samples) write_samples(opts.out_dir, res.samples);
    }
    return 0;
}

int cmd_compare(const CommonOpts& opts, const BootstrapOpts& bopts) {
    const auto t0 = std::chrono::steady_clock::now();
    const Triangle t = load_triangle(opts);
    BootstrapConfig cfg = to_config(bopts);
    const auto est = report::compute_estimates(t);
    if (!(est.reserves.total > 0.0)) {
        throw std::invalid_argument("chain-ladder reserve is zero; nothing to compare");
    }

    const auto rows = comparison_table(t, cfg);
    const auto zero_mass = report::zero_mass_diagnostics(t);
    const auto gamma_fit = fit_parametric(t, ParametricReserve::Family::gamma);
    const double gamma_excess =
        100.0 * (parametric_quantile(gamma_fit, 0.995) - est.reserves.total) / est.reserves.total;

    report::Manifest manifest;
    manifest.command = "compare";
    manifest.dataset = opts.dataset;
    manifest.file = opts.file;
    manifest.config = cfg;
    manifest.probs = bopts.probs;
    manifest.bins = bopts.bins;
    manifest.version = std::string(kVersion);
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const nlohmann::json doc = {
        {"manifest", report::manifest_json(manifest)},
        {"estimates", report::estimates_json(est)},
        {"diagnostics",
         {{"comparison", report::comparison_json(rows)},
          {"mack_gamma_excess_pct", gamma_excess},
          {"zero_mass", report::zero_mass_json(zero_mass)}}},
    };

    if (opts.format == "text") {
        std::printf("dataset: %s (n = %d)   replicates: %zu   seed: %llu\n",
                    t.label().empty() ? "-" : t.label().c_str(), t.size(), cfg.replicates,
                    static_cast<unsigned long long>(cfg.seed));
        report::print_comparison_text(rows, gamma_excess);
        report::print_zero_mass_text(zero_mass);
        std::printf("\nelapsed: %.2f s\n", manifest.duration_seconds);
    }
    if (opts.format == "csv") std::fputs(report::comparison_csv(rows).c_str(), stdout);
    emit_document(opts, doc);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chain-ladder reserving with exact continuous-time bootstrap"};
    app.require_subcommand(1);

    CommonOpts reserve_opts, boot_opts_common, compare_opts_common;
    BootstrapOpts boot_opts, compare_opts;

    auto* reserve = app.add_subcommand("reserve", "chain-ladder point estimates and Mack MSEP");
    add_common(reserve, reserve_opts);

    auto* bootstrap = app.add_subcommand("bootstrap", "simulate the reserve distribution");
    add_common(bootstrap, boot_opts_common);
    add_bootstrap_opts(bootstrap, boot_opts, true);
    bootstrap->add_flag("--emit-samples", boot_opts.emit_samples,
                        "write raw replicate reserves to OUT/samples.bin");

    auto* compare = app.add_subcommand("compare", "four-method comparison table and diagnostics");
    add_common(compare, compare_opts_common);
    add_bootstrap_opts(compare, compare_opts, false);

    try {
        app.parse(argc, argv);
        if (reserve->parsed()) return cmd_reserve(reserve_opts);
        if (bootstrap->parsed()) return cmd_bootstrap(boot_opts_common, boot_opts);
        if (compare->parsed()) return cmd_compare(compare_opts_common, compare_opts);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ctreserve::TriangleError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUserError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUserError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return 0;
}
