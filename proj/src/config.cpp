#include "hetnet/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hetnet {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

const std::set<std::string> kKnownKeys = {
    "lambda1_per_km2", "lambda2_per_km2", "lambda_u_per_km2",
    "p1_watts", "p2_watts", "alpha1", "alpha2",
    "bandwidth_hz", "noise_psd_dbm_hz",
    "b1_db", "b2_db", "eta", "beta_db",
    "rho1_bps", "rho2_bps",
    "a1", "b1_static_watts", "a2", "b2_static_watts",
    // sweep section
    "axis", "grid_start", "grid_stop", "grid_step", "grid_list",
    "metrics", "engines", "trials", "seed", "window_half_width_m",
    "threads", "ci_level",
    // fixed thresholds for non-swept metrics
    "sinr_threshold_db", "rho_scale", "ee_threshold", "rate_method",
};

// maps validation field names back to the config keys that set them
const std::map<std::string, std::string> kFieldToKey = {
    {"tier1.density", "lambda1_per_km2"},
    {"tier2.density", "lambda2_per_km2"},
    {"user_density", "lambda_u_per_km2"},
    {"tier1.tx_power", "p1_watts"},
    {"tier2.tx_power", "p2_watts"},
    {"tier1.path_loss_exp", "alpha1"},
    {"tier2.path_loss_exp", "alpha2"},
    {"bandwidth_hz", "bandwidth_hz"},
    {"noise_psd", "noise_psd_dbm_hz"},
    {"cre.bias_b1", "b1_db"},
    {"cre.bias_b2", "b2_db"},
    {"cre.partition_eta", "eta"},
    {"cre.power_beta", "beta_db"},
    {"rate_target_macro", "rho1_bps"},
    {"rate_target_small", "rho2_bps"},
    {"tier1.power_coeff_a", "a1"},
    {"tier1.power_coeff_b", "b1_static_watts"},
    {"tier2.power_coeff_a", "a2"},
    {"tier2.power_coeff_b", "b2_static_watts"},
};

struct RawEntry {
    std::string value;
    int line;
};

double parse_double(const RawEntry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size() || !std::isfinite(v)) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError(e.line, key, "expected a number, got '" + e.value + "'");
    }
}

long parse_long(const RawEntry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(e.value, &pos);
        if (pos != e.value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError(e.line, key, "expected an integer, got '" + e.value + "'");
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

Config parse_config_text(const std::string& text) {
    std::map<std::string, RawEntry> entries;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line_no, line, "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kKnownKeys.count(key)) {
            throw ConfigError(line_no, key, "unknown key");
        }
        if (entries.count(key)) {
            throw ConfigError(line_no, key, "duplicate key (first at line " +
                                                std::to_string(entries[key].line) + ")");
        }
        entries[key] = {value, line_no};
    }

    Config cfg;
    cfg.params = default_params();

    auto take = [&](const std::string& key) -> const RawEntry* {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    auto num = [&](const std::string& key, double& target) {
        if (const RawEntry* e = take(key)) target = parse_double(*e, key);
    };
    auto num_scaled = [&](const std::string& key, double& target, auto scale) {
        if (const RawEntry* e = take(key)) target = scale(parse_double(*e, key));
    };

    num_scaled("lambda1_per_km2", cfg.params.tier1.density, per_km2_to_per_m2);
    num_scaled("lambda2_per_km2", cfg.params.tier2.density, per_km2_to_per_m2);
    num_scaled("lambda_u_per_km2", cfg.params.user_density, per_km2_to_per_m2);
    num("p1_watts", cfg.params.tier1.tx_power);
    num("p2_watts", cfg.params.tier2.tx_power);
    num("alpha1", cfg.params.tier1.path_loss_exp);
    num("alpha2", cfg.params.tier2.path_loss_exp);
    num("bandwidth_hz", cfg.params.bandwidth_hz);
    num_scaled("noise_psd_dbm_hz", cfg.params.noise_psd,
               [](double dbm) { return dbm_to_watts(dbm); });
    num_scaled("b1_db", cfg.params.cre.bias_b1,
               [](double db) { return db_to_linear(db); });
    num_scaled("b2_db", cfg.params.cre.bias_b2,
               [](double db) { return db_to_linear(db); });
    num("eta", cfg.params.cre.partition_eta);
    num_scaled("beta_db", cfg.params.cre.power_beta,
               [](double db) { return db_to_linear(db); });
    num("rho1_bps", cfg.params.rate_target_macro);
    num("rho2_bps", cfg.params.rate_target_small);
    num("a1", cfg.params.tier1.power_coeff_a);
    num("b1_static_watts", cfg.params.tier1.power_coeff_b);
    num("a2", cfg.params.tier2.power_coeff_a);
    num("b2_static_watts", cfg.params.tier2.power_coeff_b);

    try {
        cfg.params.validate();
    } catch (const std::invalid_argument& e) {
        // locate the config key behind the violated field, if any
        const std::string what = e.what();
        std::string key;
        int line_of_key = 0;
        for (const auto& [field, cfg_key] : kFieldToKey) {
            if (what.find(field) != std::string::npos) {
                key = cfg_key;
                if (const RawEntry* raw = take(cfg_key)) line_of_key = raw->line;
                break;
            }
        }
        throw ConfigError(line_of_key, key, what);
    }

    const RawEntry* axis_entry = take("axis");
    static const char* kSweepOnlyKeys[] = {"grid_start", "grid_stop", "grid_step",
                                           "grid_list"};
    if (!axis_entry) {
        for (const char* k : kSweepOnlyKeys) {
            if (const RawEntry* e = take(k)) {
                throw ConfigError(e->line, k, "requires an 'axis' key");
            }
        }
        return cfg;
    }

    SweepSpec spec;
    try {
        spec.axis = axis_from_string(axis_entry->value);
    } catch (const std::exception& e) {
        throw ConfigError(axis_entry->line, "axis", e.what());
    }
    // the swept parameter must not also be fixed
    static const std::map<SweepAxis, std::string> kAxisFixedKey = {
        {SweepAxis::b1_db, "b1_db"},
        {SweepAxis::b2_db, "b2_db"},
        {SweepAxis::beta_db, "beta_db"},
        {SweepAxis::eta, "eta"},
        {SweepAxis::lambda2, "lambda2_per_km2"},
    };
    if (auto it = kAxisFixedKey.find(spec.axis); it != kAxisFixedKey.end()) {
        if (const RawEntry* e = take(it->second)) {
            throw ConfigError(e->line, it->second,
                              "parameter is the sweep axis and cannot also be fixed");
        }
    }

    if (const RawEntry* e = take("grid_list")) {
        for (const std::string& item : split_list(e->value)) {
            spec.grid.push_back(parse_double({item, e->line}, "grid_list"));
        }
        if (take("grid_start") || take("grid_stop") || take("grid_step")) {
            throw ConfigError(e->line, "grid_list",
                              "grid_list and grid_start/stop/step are exclusive");
        }
    } else {
        const RawEntry* start = take("grid_start");
        const RawEntry* stop = take("grid_stop");
        const RawEntry* step = take("grid_step");
        if (!start || !stop || !step) {
            throw ConfigError(axis_entry->line, "axis",
                              "needs grid_list or grid_start/grid_stop/grid_step");
        }
        const double v0 = parse_double(*start, "grid_start");
        const double v1 = parse_double(*stop, "grid_stop");
        const double dv = parse_double(*step, "grid_step");
        if (dv == 0.0 || (v1 - v0) * dv < 0.0) {
            throw ConfigError(step->line, "grid_step", "step has the wrong sign");
        }
        for (double x = v0; (dv > 0.0) ? x <= v1 + 1e-9 * dv : x >= v1 + 1e-9 * dv;
             x += dv) {
            spec.grid.push_back(x);
        }
    }

    if (const RawEntry* e = take("metrics")) {
        spec.metrics.clear();
        for (const std::string& item : split_list(e->value)) {
            try {
                spec.metrics.push_back(metric_from_string(item));
            } catch (const std::exception& ex) {
                throw ConfigError(e->line, "metrics", ex.what());
            }
        }
    }
    if (const RawEntry* e = take("engines")) {
        spec.engines.clear();
        for (const std::string& item : split_list(e->value)) {
            try {
                spec.engines.push_back(engine_from_string(item));
            } catch (const std::exception& ex) {
                throw ConfigError(e->line, "engines", ex.what());
            }
        }
    }
    if (const RawEntry* e = take("trials")) spec.mc.trials = parse_long(*e, "trials");
    if (const RawEntry* e = take("seed")) {
        spec.mc.seed = static_cast<std::uint64_t>(parse_long(*e, "seed"));
    }
    if (const RawEntry* e = take("window_half_width_m")) {
        spec.mc.window_half_width = parse_double(*e, "window_half_width_m");
    }
    if (const RawEntry* e = take("threads")) {
        spec.mc.threads = static_cast<int>(parse_long(*e, "threads"));
    }
    if (const RawEntry* e = take("ci_level")) {
        spec.mc.ci_level = parse_double(*e, "ci_level");
    }
    if (const RawEntry* e = take("sinr_threshold_db")) {
        spec.sinr_threshold_db = parse_double(*e, "sinr_threshold_db");
    }
    if (const RawEntry* e = take("rho_scale")) {
        spec.rho_scale = parse_double(*e, "rho_scale");
    }
    if (const RawEntry* e = take("ee_threshold")) {
        spec.ee_threshold = parse_double(*e, "ee_threshold");
    }
    if (const RawEntry* e = take("rate_method")) {
        if (e->value == "exact") {
            spec.rate_method = RateMethod::exact;
        } else if (e->value == "meanload") {
            spec.rate_method = RateMethod::meanload;
        } else {
            throw ConfigError(e->line, "rate_method", "expected exact or meanload");
        }
    }

    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(axis_entry->line, "axis", e.what());
    }
    cfg.sweep = std::move(spec);
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_reference() {
    return
        "# Scenario (defaults shown)\n"
        "lambda1_per_km2 = 1        # macro BS density\n"
        "lambda2_per_km2 = 10       # small-cell density\n"
        "lambda_u_per_km2 = 100     # user density\n"
        "p1_watts = 10\n"
        "p2_watts = 0.1\n"
        "alpha1 = 3.5               # path-loss exponents, > 2\n"
        "alpha2 = 4.0\n"
        "bandwidth_hz = 10e6\n"
        "noise_psd_dbm_hz = -174\n"
        "b1_db = 10                 # extra-offloading bias, >= b2_db\n"
        "b2_db = 2.5                # association bias\n"
        "eta = 0.2                  # partitioned resource fraction, (0,1)\n"
        "beta_db = -10              # macro power reduction, <= 0 dB\n"
        "rho1_bps = 300e3\n"
        "rho2_bps = 1200e3\n"
        "a1 = 22.6\n"
        "b1_static_watts = 412.4\n"
        "a2 = 5.5\n"
        "b2_static_watts = 32\n"
        "\n"
        "# Sweep (optional; present iff 'axis' is set)\n"
        "# axis = b1_db             # b1_db|b2_db|beta_db|eta|lambda2|threshold\n"
        "# grid_start = 2.5\n"
        "# grid_stop = 20\n"
        "# grid_step = 2.5\n"
        "# grid_list = 2.5,5,10    # alternative to start/stop/step\n"
        "# metrics = sinr          # assoc|sinr|rate|ee\n"
        "# engines = analytic      # analytic|mc\n"
        "# trials = 20000\n"
        "# seed = 1\n"
        "# window_half_width_m = 10000\n"
        "# threads = 0\n"
        "# ci_level = 0.99\n"
        "# sinr_threshold_db = 0   # fixed thresholds for non-swept metrics\n"
        "# rho_scale = 1\n"
        "# ee_threshold = 500      # bit/s per watt\n"
        "# rate_method = exact     # exact|meanload\n";
}

}  // namespace hetnet
