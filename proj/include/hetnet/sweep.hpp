#pragma once

#include <map>
#include <string>
#include <vector>

#include "hetnet/analytic.hpp"
#include "hetnet/model.hpp"
#include "hetnet/montecarlo.hpp"
#include "hetnet/results.hpp"

// Parameter-sweep engine: evaluates coverage metrics over a grid of one
// swept parameter with analytic and/or Monte Carlo engines, producing a flat
// table that serializes to CSV (and optionally SVG charts).

namespace hetnet {

enum class SweepAxis { b1_db, b2_db, beta_db, eta, lambda2, threshold };

const char* to_string(SweepAxis a);
SweepAxis axis_from_string(const std::string& s);

struct SweepSpec {
    SweepAxis axis = SweepAxis::b1_db;
    std::vector<double> grid;  // axis values in config units (dB for *_db,
                               // per km2 for lambda2)
    std::vector<Metric> metrics = {Metric::sinr};
    std::vector<Engine> engines = {Engine::analytic};
    SimulationSettings mc;      // used when the mc engine is selected

    // Fixed thresholds for metrics that are not the swept axis.
    double sinr_threshold_db = 0.0;
    double rho_scale = 1.0;
    double ee_threshold = 500.0;  // bit/s per watt
    RateMethod rate_method = RateMethod::exact;

    void validate() const;
};

struct SweepRow {
    double axis_value = 0.0;  // in the axis' config unit
    CoverageResult result;
    std::string error;        // non-empty when this point failed
};

struct SweepTable {
    std::string axis;                                  // axis name
    std::vector<std::pair<std::string, std::string>> meta;  // resolved params
    std::vector<SweepRow> rows;

    const SweepRow* find(double axis_value, Metric metric, Engine engine,
                         const std::string& domain) const;
};

// Evaluate every requested (metric, engine) at every grid point. Per-point
// failures are recorded in-row without aborting the sweep.
SweepTable run_sweep(const SweepSpec& spec, const NetworkParams& params);

// CSV: one '#'-prefixed metadata block, then
// axis,axis_value,metric,class,engine,value,ci_half_width,error
// Values are serialized with 17 significant digits so a round-trip
// reproduces them bit-for-bit.
std::string to_csv(const SweepTable& table);
SweepTable from_csv(const std::string& csv);
void write_csv(const SweepTable& table, const std::string& path);

struct ComparisonEntry {
    double axis_value = 0.0;
    Metric metric = Metric::sinr;
    std::string domain;
    double threshold = 0.0;
    double analytic = 0.0;
    double mc = 0.0;
    double mc_ci = 0.0;
    double gap = 0.0;
    bool inside_ci = false;
    bool pass = false;  // CI containment or the per-metric absolute tolerance
    bool known_approximation = false;  // rate/ee gap beyond tolerance, flagged
};

struct ComparisonReport {
    std::vector<ComparisonEntry> entries;
    int n_pass = 0;
    int n_fail = 0;
    std::string to_text() const;
};

// Pairs analytic and MC rows of a table. SINR/assoc tolerate
// max(ci, 0.01); rate/ee carry a 0.03 systematic allowance.
ComparisonReport compare_analytic_mc(const SweepTable& table);

// Figure presets: families of sweeps exploring the bias/power-reduction
// parameter space. Each run carries a descriptive name used as the output
// file stem.
struct PresetRun {
    std::string name;
    NetworkParams params;
    SweepSpec spec;
};

std::vector<PresetRun> figure_preset(const std::string& id,
                                     const NetworkParams& base,
                                     bool with_mc = false);

// Minimal self-contained line chart of a table, one polyline per
// (metric, class, engine).
std::string to_svg(const SweepTable& table);

}  // namespace hetnet
