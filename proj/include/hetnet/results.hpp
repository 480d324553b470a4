#pragma once

#include <stdexcept>
#include <string>

namespace hetnet {

enum class Metric { assoc, sinr, rate, ee };
enum class Engine { analytic, mc };

const char* to_string(Metric m);
const char* to_string(Engine e);
Metric metric_from_string(const std::string& s);
Engine engine_from_string(const std::string& s);

// One coverage (or association-probability) value with its provenance.
// `domain` identifies the conditioning: "overall", a schedule class
// (B/Bbar/D/Dbar), or an association set (u1/uD/uDbar).
//
// Threshold semantics per metric: sinr thresholds are linear SINR, ee
// thresholds are bit/s per watt, and rate thresholds are dimensionless
// multiples of the per-class rate targets (threshold t tests
// rate >= t * rho_{k(l)}), so one knob sweeps both tiers' targets.
struct CoverageResult {
    Metric metric = Metric::sinr;
    Engine engine = Engine::analytic;
    double threshold = 0.0;
    std::string domain = "overall";
    double value = 0.0;
    double ci_half_width = 0.0;  // Wilson half-width; 0 for analytic rows
    long samples = 0;            // MC sample count behind the estimate
    long successes = 0;
    bool low_confidence = false; // MC conditional estimate with < 50 samples
};

}  // namespace hetnet
