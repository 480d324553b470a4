#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include "hetnet/analytic.hpp"
#include "hetnet/config.hpp"
#include "hetnet/montecarlo.hpp"
#include "hetnet/sweep.hpp"

namespace fs = std::filesystem;
using namespace hetnet;

namespace {

struct GlobalOpts {
    std::string out_dir = ".";
    long seed = 1;
    std::string format = "csv";
    std::string config_path;
};

Config load_or_default(const GlobalOpts& g) {
    if (g.config_path.empty()) {
        Config cfg;
        cfg.params = default_params();
        return cfg;
    }
    return load_config(g.config_path);
}

void emit_table(const SweepTable& table, const GlobalOpts& g,
                const std::string& stem) {
    fs::create_directories(g.out_dir);
    const fs::path csv_path = fs::path(g.out_dir) / (stem + ".csv");
    write_csv(table, csv_path.string());
    std::cout << "wrote " << csv_path.string() << "\n";
    if (g.format != "svg") return;
    // one chart per metric present in the table
    std::vector<Metric> metrics;
    for (const auto& r : table.rows) {
        if (std::find(metrics.begin(), metrics.end(), r.result.metric) ==
            metrics.end()) {
            metrics.push_back(r.result.metric);
        }
    }
    for (Metric m : metrics) {
        SweepTable sub;
        sub.axis = table.axis;
        sub.meta = table.meta;
        for (const auto& r : table.rows) {
            if (r.result.metric == m) sub.rows.push_back(r);
        }
        const std::string suffix =
            metrics.size() > 1 ? std::string("_") + to_string(m) : std::string();
        const fs::path svg_path = fs::path(g.out_dir) / (stem + suffix + ".svg");
        std::ofstream out(svg_path, std::ios::binary);
        out << to_svg(sub);
        std::cout << "wrote " << svg_path.string() << "\n";
    }
}

int cmd_assoc(const GlobalOpts& g, bool with_mc, long trials) {
    Config cfg = load_or_default(g);
    const AssociationProbs probs = association_probabilities(cfg.params);
    std::printf("analytic  u1=%.6f  uD=%.6f  uDbar=%.6f  (sum %.9f)\n", probs.a1,
                probs.a_d, probs.a_dbar, probs.a1 + probs.a_d + probs.a_dbar);
    if (with_mc) {
        SimulationSettings s = cfg.sweep ? cfg.sweep->mc : SimulationSettings{};
        s.trials = trials;
        s.seed = static_cast<std::uint64_t>(g.seed);
        const AssociationEstimate est = estimate_association(cfg.params, s);
        std::printf("mc        u1=%.6f±%.6f  uD=%.6f±%.6f  uDbar=%.6f±%.6f  (%ld users)\n",
                    est.u1.value, est.u1.ci_half_width, est.ud.value,
                    est.ud.ci_half_width, est.udbar.value, est.udbar.ci_half_width,
                    trials);
    }
    return 0;
}

int cmd_coverage(const GlobalOpts& g, const std::string& metric_name,
                 const std::string& engine_name, double start, double stop,
                 double step, long trials) {
    Config cfg = load_or_default(g);
    const Metric metric = metric_from_string(metric_name);
    if (metric == Metric::assoc) {
        std::cerr << "use the assoc subcommand for association probabilities\n";
        return 1;
    }

    SweepSpec spec = cfg.sweep.value_or(SweepSpec{});
    spec.axis = SweepAxis::threshold;
    spec.grid.clear();
    for (double x = start; x <= stop + 1e-9 * std::abs(step); x += step) {
        spec.grid.push_back(x);
    }
    spec.metrics = {metric};
    if (engine_name == "both") {
        spec.engines = {Engine::analytic, Engine::mc};
    } else {
        spec.engines = {engine_from_string(engine_name)};
    }
    spec.mc.trials = trials;
    spec.mc.seed = static_cast<std::uint64_t>(g.seed);

    const SweepTable table = run_sweep(spec, cfg.params);
    emit_table(table, g, std::string("coverage_") + metric_name);
    if (spec.engines.size() == 2) {
        std::cout << compare_analytic_mc(table).to_text();
    }
    return 0;
}

int cmd_sweep(const GlobalOpts& g) {
    Config cfg = load_or_default(g);
    if (!cfg.sweep) {
        std::cerr << "config has no sweep section (missing 'axis')\n";
        return 1;
    }
    SweepSpec spec = *cfg.sweep;
    const SweepTable table = run_sweep(spec, cfg.params);
    emit_table(table, g, std::string("sweep_") + to_string(spec.axis));
    if (spec.engines.size() >= 2) {
        std::cout << compare_analytic_mc(table).to_text();
    }
    return 0;
}

int cmd_figure(const GlobalOpts& g, const std::string& preset, bool with_mc) {
    Config cfg = load_or_default(g);
    for (PresetRun& run : figure_preset(preset, cfg.params, with_mc)) {
        run.spec.mc.seed = static_cast<std::uint64_t>(g.seed);
        const SweepTable table = run_sweep(run.spec, run.params);
        emit_table(table, g, run.name);
    }
    return 0;
}

int cmd_validate(const GlobalOpts& g) {
    if (g.config_path.empty()) {
        std::cout << config_reference();
        return 0;
    }
    const Config cfg = load_config(g.config_path);
    const NetworkParams& p = cfg.params;
    std::printf("config ok\n");
    std::printf("lambda1 %.6g /km2, lambda2 %.6g /km2, lambda_u %.6g /km2\n",
                p.tier1.density * 1e6, p.tier2.density * 1e6, p.user_density * 1e6);
    std::printf("P1 %.6g W, P2 %.6g W, alpha1 %.3g, alpha2 %.3g\n",
                p.tier1.tx_power, p.tier2.tx_power, p.tier1.path_loss_exp,
                p.tier2.path_loss_exp);
    std::printf("W %.6g Hz, sigma2 %.6g W\n", p.bandwidth_hz, noise_power(p));
    std::printf("B1 %.4g dB, B2 %.4g dB, eta %.3g, beta %.4g dB\n",
                linear_to_db(p.cre.bias_b1), linear_to_db(p.cre.bias_b2),
                p.cre.partition_eta, linear_to_db(p.cre.power_beta));
    std::printf("rho1 %.6g bps, rho2 %.6g bps\n", p.rate_target_macro,
                p.rate_target_small);
    std::printf("BS power: macro %.6g W, small cell %.6g W\n",
                total_bs_power(p.tier1), total_bs_power(p.tier2));
    if (cfg.sweep) {
        std::printf("sweep: axis %s, %zu grid points\n", to_string(cfg.sweep->axis),
                    cfg.sweep->grid.size());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-tier network coverage calculator and simulator"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", g.seed, "Monte Carlo seed")->capture_default_str();
    app.add_option("--format", g.format, "csv or svg (svg adds charts)")
        ->check(CLI::IsMember({"csv", "svg"}))
        ->capture_default_str();

    auto* assoc = app.add_subcommand("assoc", "association probabilities");
    bool assoc_mc = false;
    long assoc_trials = 200000;
    assoc->add_option("--config", g.config_path, "config file");
    assoc->add_flag("--mc", assoc_mc, "also estimate by simulation");
    assoc->add_option("--trials", assoc_trials, "simulated users")
        ->capture_default_str();

    auto* coverage = app.add_subcommand("coverage", "coverage curve over thresholds");
    std::string cov_metric = "sinr", cov_engine = "analytic";
    double cov_start = -10.0, cov_stop = 20.0, cov_step = 2.5;
    long cov_trials = 20000;
    coverage->add_option("--config", g.config_path, "config file");
    coverage->add_option("--metric", cov_metric, "sinr|rate|ee")
        ->check(CLI::IsMember({"sinr", "rate", "ee"}))
        ->capture_default_str();
    coverage->add_option("--engine", cov_engine, "analytic|mc|both")
        ->check(CLI::IsMember({"analytic", "mc", "both"}))
        ->capture_default_str();
    coverage->add_option("--start", cov_start, "first threshold (dB for sinr, rho_scale for rate, bit/s/W for ee)")
        ->capture_default_str();
    coverage->add_option("--stop", cov_stop, "last threshold")->capture_default_str();
    coverage->add_option("--step", cov_step, "threshold step")->capture_default_str();
    coverage->add_option("--trials", cov_trials, "MC trials")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "run the sweep configured in a file");
    sweep->add_option("--config", g.config_path, "config file")->required();

    auto* figure = app.add_subcommand("figure", "run a named sweep preset");
    std::string preset = "fig3";
    bool fig_mc = false;
    figure->add_option("--config", g.config_path, "config file with base scenario");
    figure->add_option("--preset", preset, "fig3|fig4|fig5|fig6|fig7|fig8")
        ->required()
        ->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6", "fig7", "fig8"}));
    figure->add_flag("--mc", fig_mc, "overlay Monte Carlo estimates");

    auto* validate = app.add_subcommand("validate", "parse and print a config");
    validate->add_option("--config", g.config_path, "config file");

    for (CLI::App* sub : {assoc, coverage, sweep, figure, validate}) {
        sub->fallthrough();  // global flags may follow the subcommand
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (assoc->parsed()) return cmd_assoc(g, assoc_mc, assoc_trials);
        if (coverage->parsed()) {
            return cmd_coverage(g, cov_metric, cov_engine, cov_start, cov_stop,
                                cov_step, cov_trials);
        }
        if (sweep->parsed()) return cmd_sweep(g);
        if (figure->parsed()) return cmd_figure(g, preset, fig_mc);
        if (validate->parsed()) return cmd_validate(g);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
