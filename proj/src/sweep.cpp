#include "hetnet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace hetnet {

const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::b1_db: return "b1_db";
        case SweepAxis::b2_db: return "b2_db";
        case SweepAxis::beta_db: return "beta_db";
        case SweepAxis::eta: return "eta";
        case SweepAxis::lambda2: return "lambda2";
        default: return "threshold";
    }
}

SweepAxis axis_from_string(const std::string& s) {
    if (s == "b1_db") return SweepAxis::b1_db;
    if (s == "b2_db") return SweepAxis::b2_db;
    if (s == "beta_db") return SweepAxis::beta_db;
    if (s == "eta") return SweepAxis::eta;
    if (s == "lambda2") return SweepAxis::lambda2;
    if (s == "threshold") return SweepAxis::threshold;
    throw std::invalid_argument("unknown sweep axis: " + s);
}

void SweepSpec::validate() const {
    if (grid.empty()) {
        throw std::invalid_argument("sweep grid must be non-empty");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1]) && !(grid[i] < grid[i - 1])) {
            throw std::invalid_argument("sweep grid must be strictly monotone");
        }
        if (i >= 2) {
            const bool up = grid[1] > grid[0];
            if (up != (grid[i] > grid[i - 1])) {
                throw std::invalid_argument("sweep grid must be strictly monotone");
            }
        }
    }
    if (metrics.empty()) {
        throw std::invalid_argument("sweep needs at least one metric");
    }
    if (engines.empty()) {
        throw std::invalid_argument("sweep needs at least one engine");
    }
    if (axis == SweepAxis::threshold && metrics.size() != 1) {
        throw std::invalid_argument(
            "axis=threshold sweeps exactly one metric (the threshold unit is "
            "metric-specific)");
    }
    if (axis == SweepAxis::threshold && metrics[0] == Metric::assoc) {
        throw std::invalid_argument("axis=threshold does not apply to assoc");
    }
}

namespace {

NetworkParams apply_axis(const NetworkParams& base, SweepAxis axis, double value) {
    NetworkParams p = base;
    switch (axis) {
        case SweepAxis::b1_db: p.cre.bias_b1 = db_to_linear(value); break;
        case SweepAxis::b2_db: p.cre.bias_b2 = db_to_linear(value); break;
        case SweepAxis::beta_db: p.cre.power_beta = db_to_linear(value); break;
        case SweepAxis::eta: p.cre.partition_eta = value; break;
        case SweepAxis::lambda2: p.tier2.density = per_km2_to_per_m2(value); break;
        case SweepAxis::threshold: break;  // handled by the metric evaluators
    }
    return p;
}

struct Thresholds {
    double sinr_linear;
    double rho_scale;
    double ee_tau;
};

Thresholds resolve_thresholds(const SweepSpec& spec, double axis_value) {
    Thresholds t{db_to_linear(spec.sinr_threshold_db), spec.rho_scale,
                 spec.ee_threshold};
    if (spec.axis == SweepAxis::threshold) {
        switch (spec.metrics[0]) {
            case Metric::sinr: t.sinr_linear = db_to_linear(axis_value); break;
            case Metric::rate: t.rho_scale = axis_value; break;
            case Metric::ee: t.ee_tau = axis_value; break;
            default: break;
        }
    }
    return t;
}

void append_analytic_assoc(std::vector<SweepRow>& rows, double axis_value,
                           const NetworkParams& p) {
    const AssociationProbs probs = association_probabilities(p);
    const std::pair<const char*, double> sets[] = {
        {"u1", probs.a1}, {"uD", probs.a_d}, {"uDbar", probs.a_dbar}};
    for (const auto& [domain, value] : sets) {
        SweepRow row;
        row.axis_value = axis_value;
        row.result.metric = Metric::assoc;
        row.result.engine = Engine::analytic;
        row.result.domain = domain;
        row.result.value = value;
        rows.push_back(std::move(row));
    }
}

void append_analytic_coverage(std::vector<SweepRow>& rows, double axis_value,
                              Metric metric, const NetworkParams& p,
                              const Thresholds& t, RateMethod method) {
    auto add = [&](const std::string& domain, double threshold, double value) {
        SweepRow row;
        row.axis_value = axis_value;
        row.result.metric = metric;
        row.result.engine = Engine::analytic;
        row.result.domain = domain;
        row.result.threshold = threshold;
        row.result.value = value;
        rows.push_back(std::move(row));
    };
    const bool has_d = p.cre.bias_b1 != p.cre.bias_b2;
    switch (metric) {
        case Metric::sinr: {
            add("overall", t.sinr_linear, sinr_coverage_overall(t.sinr_linear, p));
            for (ScheduleClass l : kAllClasses) {
                if (l == ScheduleClass::D && !has_d) continue;
                add(to_string(l), t.sinr_linear,
                    sinr_coverage_class(l, t.sinr_linear, p));
            }
            break;
        }
        case Metric::rate: {
            add("overall", t.rho_scale,
                rate_coverage_overall(t.rho_scale, p, method));
            for (ScheduleClass l : kAllClasses) {
                if (l == ScheduleClass::D && !has_d) continue;
                const double rho = t.rho_scale * p.rate_target(rate_tier(l));
                const double v = method == RateMethod::exact
                                     ? rate_coverage_class_exact(l, rho, p)
                                     : rate_coverage_class_meanload(l, rho, p);
                add(to_string(l), t.rho_scale, v);
            }
            break;
        }
        case Metric::ee: {
            add("overall", t.ee_tau, ee_coverage_overall(t.ee_tau, p, method));
            for (ScheduleClass l : kAllClasses) {
                if (l == ScheduleClass::D && !has_d) continue;
                add(to_string(l), t.ee_tau, ee_coverage_class(l, t.ee_tau, p, method));
            }
            break;
        }
        default: break;
    }
}

void append_mc_rows(std::vector<SweepRow>& rows, double axis_value, Metric metric,
                    const NetworkParams& p, const Thresholds& t,
                    const SimulationSettings& mc) {
    if (metric == Metric::assoc) {
        const AssociationEstimate est = estimate_association(p, mc);
        for (const CoverageResult* r : {&est.u1, &est.ud, &est.udbar}) {
            SweepRow row;
            row.axis_value = axis_value;
            row.result = *r;
            rows.push_back(std::move(row));
        }
        return;
    }
    const double threshold = metric == Metric::sinr  ? t.sinr_linear
                             : metric == Metric::rate ? t.rho_scale
                                                      : t.ee_tau;
    const CoverageEstimate est = estimate_coverage(metric, {threshold}, p, mc);
    for (const auto& r : est.rows) {
        SweepRow row;
        row.axis_value = axis_value;
        row.result = r;
        if (r.samples == 0) {
            row.error = "no_samples";
        } else if (r.low_confidence) {
            row.error = "low_confidence";
        }
        rows.push_back(std::move(row));
    }
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

const SweepRow* SweepTable::find(double axis_value, Metric metric, Engine engine,
                                 const std::string& domain) const {
    for (const auto& r : rows) {
        if (r.axis_value == axis_value && r.result.metric == metric &&
            r.result.engine == engine && r.result.domain == domain) {
            return &r;
        }
    }
    return nullptr;
}

SweepTable run_sweep(const SweepSpec& spec, const NetworkParams& params) {
    spec.validate();
    const bool wants_mc =
        std::find(spec.engines.begin(), spec.engines.end(), Engine::mc) !=
        spec.engines.end();
    if (wants_mc && spec.mc.trials < 1000) {
        throw std::invalid_argument("mc engine requires trials >= 1000");
    }

    SweepTable table;
    table.axis = to_string(spec.axis);
    table.meta = {
        {"tool", "hetnetsim 1.0"},
        {"axis", to_string(spec.axis)},
        {"lambda1_per_km2", format_g17(params.tier1.density * 1e6)},
        {"lambda2_per_km2", format_g17(params.tier2.density * 1e6)},
        {"lambda_u_per_km2", format_g17(params.user_density * 1e6)},
        {"p1_watts", format_g17(params.tier1.tx_power)},
        {"p2_watts", format_g17(params.tier2.tx_power)},
        {"alpha1", format_g17(params.tier1.path_loss_exp)},
        {"alpha2", format_g17(params.tier2.path_loss_exp)},
        {"bandwidth_hz", format_g17(params.bandwidth_hz)},
        {"b1_db", format_g17(linear_to_db(params.cre.bias_b1))},
        {"b2_db", format_g17(linear_to_db(params.cre.bias_b2))},
        {"eta", format_g17(params.cre.partition_eta)},
        {"beta_db", format_g17(linear_to_db(params.cre.power_beta))},
        {"rho1_bps", format_g17(params.rate_target_macro)},
        {"rho2_bps", format_g17(params.rate_target_small)},
        {"sinr_threshold_db", format_g17(spec.sinr_threshold_db)},
        {"rho_scale", format_g17(spec.rho_scale)},
        {"ee_threshold", format_g17(spec.ee_threshold)},
        {"rate_method",
         spec.rate_method == RateMethod::exact ? "exact" : "meanload"},
    };
    if (wants_mc) {
        table.meta.emplace_back("seed", std::to_string(spec.mc.seed));
        table.meta.emplace_back("trials", std::to_string(spec.mc.trials));
        table.meta.emplace_back("window_half_width_m",
                                format_g17(spec.mc.window_half_width));
        table.meta.emplace_back("ci_level", format_g17(spec.mc.ci_level));
    }

    for (double axis_value : spec.grid) {
        NetworkParams p;
        try {
            p = apply_axis(params, spec.axis, axis_value);
            p.validate();
        } catch (const std::exception& e) {
            for (Metric m : spec.metrics) {
                for (Engine eng : spec.engines) {
                    SweepRow row;
                    row.axis_value = axis_value;
                    row.result.metric = m;
                    row.result.engine = eng;
                    row.result.domain = "overall";
                    row.result.value = std::numeric_limits<double>::quiet_NaN();
                    row.error = e.what();
                    table.rows.push_back(std::move(row));
                }
            }
            continue;
        }
        const Thresholds t = resolve_thresholds(spec, axis_value);
        for (Metric m : spec.metrics) {
            for (Engine eng : spec.engines) {
                try {
                    if (eng == Engine::analytic) {
                        if (m == Metric::assoc) {
                            append_analytic_assoc(table.rows, axis_value, p);
                        } else {
                            append_analytic_coverage(table.rows, axis_value, m, p, t,
                                                     spec.rate_method);
                        }
                    } else {
                        append_mc_rows(table.rows, axis_value, m, p, t, spec.mc);
                    }
                } catch (const std::exception& e) {
                    SweepRow row;
                    row.axis_value = axis_value;
                    row.result.metric = m;
                    row.result.engine = eng;
                    row.result.domain = "overall";
                    row.result.value = std::numeric_limits<double>::quiet_NaN();
                    row.error = e.what();
                    table.rows.push_back(std::move(row));
                }
            }
        }
    }
    return table;
}

std::string to_csv(const SweepTable& table) {
    std::ostringstream out;
    for (const auto& [k, v] : table.meta) {
        out << "# " << k << " = " << v << "\n";
    }
    out << "axis,axis_value,metric,class,engine,value,ci_half_width,error\n";
    for (const auto& r : table.rows) {
        out << table.axis << ',' << format_g17(r.axis_value) << ','
            << to_string(r.result.metric) << ',' << r.result.domain << ','
            << to_string(r.result.engine) << ',';
        if (std::isnan(r.result.value)) {
            out << "";
        } else {
            out << format_g17(r.result.value);
        }
        out << ',';
        if (r.result.engine == Engine::mc && !std::isnan(r.result.ci_half_width) &&
            r.result.samples > 0) {
            out << format_g17(r.result.ci_half_width);
        }
        out << ',' << r.error << "\n";
    }
    return out.str();
}

SweepTable from_csv(const std::string& csv) {
    SweepTable table;
    std::istringstream in(csv);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            const auto eq = body.find('=');
            if (eq != std::string::npos) {
                auto trim = [](std::string s) {
                    const auto b = s.find_first_not_of(" \t");
                    const auto e = s.find_last_not_of(" \t");
                    return b == std::string::npos ? std::string()
                                                  : s.substr(b, e - b + 1);
                };
                table.meta.emplace_back(trim(body.substr(0, eq)),
                                        trim(body.substr(eq + 1)));
            }
            continue;
        }
        if (!header_seen) {
            header_seen = true;  // column header
            continue;
        }
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        while (fields.size() < 8) fields.emplace_back();
        SweepRow row;
        table.axis = fields[0];
        row.axis_value = std::stod(fields[1]);
        row.result.metric = metric_from_string(fields[2]);
        row.result.domain = fields[3];
        row.result.engine = engine_from_string(fields[4]);
        row.result.value = fields[5].empty()
                               ? std::numeric_limits<double>::quiet_NaN()
                               : std::stod(fields[5]);
        if (!fields[6].empty()) {
            row.result.ci_half_width = std::stod(fields[6]);
            row.result.samples = 1;  // marks the row as a populated MC estimate
        }
        row.error = fields[7];
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_csv(const SweepTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << to_csv(table);
}

ComparisonReport compare_analytic_mc(const SweepTable& table) {
    ComparisonReport report;
    for (const auto& r : table.rows) {
        if (r.result.engine != Engine::analytic || !r.error.empty()) continue;
        const SweepRow* mc =
            table.find(r.axis_value, r.result.metric, Engine::mc, r.result.domain);
        if (!mc || std::isnan(mc->result.value)) continue;
        ComparisonEntry e;
        e.axis_value = r.axis_value;
        e.metric = r.result.metric;
        e.domain = r.result.domain;
        e.threshold = r.result.threshold;
        e.analytic = r.result.value;
        e.mc = mc->result.value;
        e.mc_ci = mc->result.ci_half_width;
        e.gap = std::abs(e.analytic - e.mc);
        e.inside_ci = e.gap <= e.mc_ci;
        const bool strict =
            e.metric == Metric::sinr || e.metric == Metric::assoc;
        const double tol = strict ? 0.01 : 0.03;
        e.pass = e.inside_ci || e.gap <= tol;
        e.known_approximation = !strict && !e.pass;
        report.entries.push_back(e);
        if (e.pass) {
            ++report.n_pass;
        } else {
            ++report.n_fail;
        }
    }
    if (report.entries.empty()) {
        throw std::runtime_error(
            "compare_analytic_mc: table has no overlapping analytic/mc rows");
    }
    return report;
}

std::string ComparisonReport::to_text() const {
    std::ostringstream out;
    out << "axis_value metric class analytic mc gap ci verdict\n";
    char buf[256];
    for (const auto& e : entries) {
        const char* verdict = e.pass ? "pass"
                              : e.known_approximation ? "known-approximation gap"
                                                      : "FAIL";
        std::snprintf(buf, sizeof(buf), "%-10g %-5s %-7s %8.5f %8.5f %7.5f %7.5f %s\n",
                      e.axis_value, to_string(e.metric), e.domain.c_str(), e.analytic,
                      e.mc, e.gap, e.mc_ci, verdict);
        out << buf;
    }
    out << n_pass << " pass, " << n_fail << " outside tolerance\n";
    return out.str();
}

namespace {

std::vector<double> linspace(double start, double stop, double step) {
    std::vector<double> v;
    for (double x = start; x <= stop + 1e-9 * std::abs(step); x += step) {
        v.push_back(x);
    }
    return v;
}

PresetRun make_run(const std::string& name, const NetworkParams& base,
                   double b1_db, double b2_db, double eta, double beta_db) {
    PresetRun run;
    run.name = name;
    run.params = base;
    run.params.cre.bias_b1 = db_to_linear(b1_db);
    run.params.cre.bias_b2 = db_to_linear(b2_db);
    run.params.cre.partition_eta = eta;
    run.params.cre.power_beta = db_to_linear(beta_db);
    return run;
}

std::string tag(double beta_db, double eta) {
    std::ostringstream s;
    s << "beta" << beta_db << "dB_eta" << eta;
    return s.str();
}

}  // namespace

std::vector<PresetRun> figure_preset(const std::string& id,
                                     const NetworkParams& base, bool with_mc) {
    std::vector<PresetRun> runs;
    const std::vector<Engine> engines =
        with_mc ? std::vector<Engine>{Engine::analytic, Engine::mc}
                : std::vector<Engine>{Engine::analytic};

    auto b1_sweep = [&](Metric metric, const std::string& stem, double ee_tau) {
        for (double beta_db : {0.0, -10.0}) {
            for (double eta : {0.2, 0.8}) {
                PresetRun run = make_run(stem + "_" + tag(beta_db, eta), base,
                                         10.0, 2.5, eta, beta_db);
                run.spec.axis = SweepAxis::b1_db;
                run.spec.grid = linspace(2.5, 20.0, 2.5);
                run.spec.metrics = {metric};
                run.spec.engines = engines;
                run.spec.ee_threshold = ee_tau;
                runs.push_back(std::move(run));
            }
        }
    };

    if (id == "fig3") {
        // overall SINR coverage against the extra bias, at T = 0 dB
        b1_sweep(Metric::sinr, "fig3_sinr_vs_b1", 500.0);
    } else if (id == "fig4") {
        // overall rate coverage against the extra bias, at the class targets
        b1_sweep(Metric::rate, "fig4_rate_vs_b1", 500.0);
    } else if (id == "fig5") {
        // overall EE coverage against the extra bias. The threshold sits at
        // the small-cell EE scale so the offload/congestion trade-off is
        // visible: the curve rises to an interior optimum and falls.
        b1_sweep(Metric::ee, "fig5_ee_vs_b1", 20000.0);
    } else if (id == "fig6") {
        // EE coverage vs threshold for families of the extra bias
        for (double b1_db : {5.0, 10.0}) {
            for (double beta_db : {0.0, -10.0}) {
                std::ostringstream name;
                name << "fig6_ee_vs_tau_b1" << b1_db << "dB_beta" << beta_db << "dB";
                PresetRun run = make_run(name.str(), base, b1_db, 0.0, 0.2, beta_db);
                run.spec.axis = SweepAxis::threshold;
                run.spec.grid = linspace(2500.0, 60000.0, 2500.0);
                run.spec.metrics = {Metric::ee};
                run.spec.engines = engines;
                runs.push_back(std::move(run));
            }
        }
    } else if (id == "fig7") {
        // EE coverage vs threshold for families of the ordinary bias
        for (double b2_db : {0.0, 5.0, 10.0}) {
            for (double beta_db : {0.0, -10.0}) {
                std::ostringstream name;
                name << "fig7_ee_vs_tau_b2" << b2_db << "dB_beta" << beta_db << "dB";
                PresetRun run = make_run(name.str(), base, 10.0, b2_db, 0.2, beta_db);
                run.spec.axis = SweepAxis::threshold;
                run.spec.grid = linspace(2500.0, 60000.0, 2500.0);
                run.spec.metrics = {Metric::ee};
                run.spec.engines = engines;
                runs.push_back(std::move(run));
            }
        }
    } else if (id == "fig8") {
        // EE coverage vs small-cell density
        for (double b1_db : {5.0, 10.0}) {
            for (double beta_db : {0.0, -10.0}) {
                std::ostringstream name;
                name << "fig8_ee_vs_lambda2_b1" << b1_db << "dB_beta" << beta_db
                     << "dB";
                PresetRun run = make_run(name.str(), base, b1_db, 0.0, 0.2, beta_db);
                run.spec.axis = SweepAxis::lambda2;
                run.spec.grid = {1, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
                run.spec.metrics = {Metric::ee};
                run.spec.engines = engines;
                runs.push_back(std::move(run));
            }
        }
    } else {
        throw std::invalid_argument("unknown figure preset: " + id +
                                    " (expected fig3..fig8)");
    }
    for (auto& run : runs) {
        run.spec.mc.seed = 1;
    }
    return runs;
}

std::string to_svg(const SweepTable& table) {
    // collect polylines keyed by (metric, class, engine)
    struct Series {
        std::string key;
        std::vector<std::pair<double, double>> pts;
    };
    std::vector<Series> series;
    double xmin = 1e300, xmax = -1e300;
    for (const auto& r : table.rows) {
        if (!r.error.empty() && r.error != "low_confidence") continue;
        if (std::isnan(r.result.value)) continue;
        const std::string key = std::string(to_string(r.result.metric)) + "/" +
                                r.result.domain + "/" + to_string(r.result.engine);
        auto it = std::find_if(series.begin(), series.end(),
                               [&](const Series& s) { return s.key == key; });
        if (it == series.end()) {
            series.push_back({key, {}});
            it = series.end() - 1;
        }
        it->pts.emplace_back(r.axis_value, r.result.value);
        xmin = std::min(xmin, r.axis_value);
        xmax = std::max(xmax, r.axis_value);
    }
    if (series.empty() || xmin >= xmax) {
        xmin = 0.0;
        xmax = 1.0;
    }

    const int w = 860, h = 560;
    const int ml = 70, mr = 220, mt = 30, mb = 50;
    auto sx = [&](double x) {
        return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr);
    };
    auto sy = [&](double y) { return h - mb - y * (h - mt - mb); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
                                    "#bcbd22", "#e377c2"};
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='"
        << h << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    // axes
    out << "<line x1='" << ml << "' y1='" << (h - mb) << "' x2='" << (w - mr)
        << "' y2='" << (h - mb) << "' stroke='black'/>\n";
    out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='"
        << (h - mb) << "' stroke='black'/>\n";
    for (int i = 0; i <= 10; ++i) {
        const double y = i / 10.0;
        out << "<line x1='" << (ml - 4) << "' y1='" << sy(y) << "' x2='" << ml
            << "' y2='" << sy(y) << "' stroke='black'/>\n";
        out << "<text x='" << (ml - 8) << "' y='" << (sy(y) + 4)
            << "' font-size='11' text-anchor='end'>" << y << "</text>\n";
    }
    for (int i = 0; i <= 8; ++i) {
        const double x = xmin + (xmax - xmin) * i / 8.0;
        out << "<line x1='" << sx(x) << "' y1='" << (h - mb) << "' x2='" << sx(x)
            << "' y2='" << (h - mb + 4) << "' stroke='black'/>\n";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", x);
        out << "<text x='" << sx(x) << "' y='" << (h - mb + 18)
            << "' font-size='11' text-anchor='middle'>" << buf << "</text>\n";
    }
    out << "<text x='" << (ml + (w - ml - mr) / 2) << "' y='" << (h - 12)
        << "' font-size='13' text-anchor='middle'>" << table.axis << "</text>\n";
    out << "<text x='18' y='" << (mt + (h - mt - mb) / 2)
        << "' font-size='13' text-anchor='middle' transform='rotate(-90 18 "
        << (mt + (h - mt - mb) / 2) << ")'>coverage</text>\n";

    int ci = 0;
    int ly = mt + 10;
    for (const auto& s : series) {
        const char* color = palette[ci % 10];
        out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (const auto& [x, y] : s.pts) {
            out << sx(x) << ',' << sy(std::clamp(y, 0.0, 1.0)) << ' ';
        }
        out << "'/>\n";
        out << "<rect x='" << (w - mr + 10) << "' y='" << (ly - 9)
            << "' width='12' height='4' fill='" << color << "'/>\n";
        out << "<text x='" << (w - mr + 28) << "' y='" << ly
            << "' font-size='11'>" << s.key << "</text>\n";
        ly += 16;
        ++ci;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace hetnet
