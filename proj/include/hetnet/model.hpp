#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Scenario description for a two-tier downlink cellular network: per-tier
// deployment and radio parameters, the two-bias cell range expansion policy,
// and the base-station power consumption model. All quantities are stored in
// SI units (meters, watts, hertz); configuration front-ends convert from the
// usual per-km2 / dB / dBm conventions on ingest.

namespace hetnet {

// 10^(dB/10). Rejects non-finite input.
double db_to_linear(double value_db);
double linear_to_db(double value_linear);

// per-km2 -> per-m2
constexpr double per_km2_to_per_m2(double v) { return v * 1e-6; }

// dBm -> watts
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

struct TierParams {
    double density = 0.0;        // BS per m^2
    double tx_power = 0.0;       // W
    double path_loss_exp = 0.0;  // > 2, required for interference integrals to converge
    double power_coeff_a = 0.0;  // load-dependent power slope, dimensionless
    double power_coeff_b = 0.0;  // static power, W

    void validate(const std::string& name) const;
};

// Two-bias cell range expansion with macro-tier resource partitioning.
// bias_b1 governs which macro-rate users are pushed to small cells, bias_b2
// is the ordinary association bias; bias_b1 >= bias_b2 (equality disables the
// extra expansion ring). The macro tier transmits at power_beta * tx_power on
// a partition_eta fraction of resources.
struct CREPolicy {
    double bias_b1 = 1.0;        // linear ratio
    double bias_b2 = 1.0;        // linear ratio
    double partition_eta = 0.2;  // in (0,1)
    double power_beta = 1.0;     // in (0,1]; 1 = no power reduction

    void validate() const;
};

struct NetworkParams {
    TierParams tier1;            // macro tier
    TierParams tier2;            // small-cell tier
    double user_density = 0.0;   // users per m^2
    double bandwidth_hz = 0.0;   // W in rate formulas
    double noise_psd = 0.0;      // W/Hz
    CREPolicy cre;
    double rate_target_macro = 0.0;  // bit/s, users associated at macro rate class
    double rate_target_small = 0.0;  // bit/s

    const TierParams& tier(int k) const { return k == 1 ? tier1 : tier2; }
    double rate_target(int k) const { return k == 1 ? rate_target_macro : rate_target_small; }

    void validate() const;
};

// sigma^2 = N0 * W
double noise_power(const NetworkParams& params);

// Average BS power draw: a*P + b
double total_bs_power(const TierParams& tier);

// Default scenario used throughout the tests and as the config baseline:
// lambda1 = 1 /km^2, lambda2 = 10 /km^2, lambda_u = 100 /km^2, P1 = 10 W,
// P2 = 0.1 W, alpha1 = 3.5, alpha2 = 4.0, W = 10 MHz, N0 = -174 dBm/Hz,
// rho1 = 300 kbps, rho2 = 1200 kbps, macro power model (22.6, 412.4 W),
// small-cell power model (5.5, 32 W), B1 = 10 dB, B2 = 2.5 dB, eta = 0.2,
// beta = -10 dB.
NetworkParams default_params();

// The three disjoint association sets: macro users, extra-expanded small-cell
// users, original small-cell users.
enum class UserSet { U1, UD, UDbar };

// Resource type a scheduled user occupies: B = macro user on the
// reduced-power fraction, Bbar = macro user on full-power resources, D =
// extra-expanded user on protected small-cell resources, Dbar = original
// small-cell user on the remaining resources.
enum class ScheduleClass { B, Bbar, D, Dbar };

constexpr ScheduleClass kAllClasses[] = {ScheduleClass::B, ScheduleClass::Bbar,
                                         ScheduleClass::D, ScheduleClass::Dbar};

// Serving tier M(l)
constexpr int serving_tier(ScheduleClass l) {
    return (l == ScheduleClass::B || l == ScheduleClass::Bbar) ? 1 : 2;
}

// Rate-target class k(l): extra-expanded users keep the macro rate target.
constexpr int rate_tier(ScheduleClass l) { return l == ScheduleClass::Dbar ? 2 : 1; }

// Association set q(l) whose population shares the serving BS's resources.
constexpr UserSet assoc_set(ScheduleClass l) {
    switch (l) {
        case ScheduleClass::B:
        case ScheduleClass::Bbar: return UserSet::U1;
        case ScheduleClass::D: return UserSet::UD;
        default: return UserSet::UDbar;
    }
}

const char* to_string(ScheduleClass l);
const char* to_string(UserSet s);

}  // namespace hetnet
