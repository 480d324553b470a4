#include "hetnet/model.hpp"

namespace hetnet {

double db_to_linear(double value_db) {
    if (!std::isfinite(value_db)) {
        throw std::invalid_argument("db_to_linear: value must be finite");
    }
    return std::pow(10.0, value_db / 10.0);
}

double linear_to_db(double value_linear) {
    if (!(value_linear > 0.0) || !std::isfinite(value_linear)) {
        throw std::invalid_argument("linear_to_db: value must be finite and positive");
    }
    return 10.0 * std::log10(value_linear);
}

void TierParams::validate(const std::string& name) const {
    if (!(density > 0.0)) {
        throw std::invalid_argument(name + ".density must be > 0");
    }
    if (!(tx_power > 0.0)) {
        throw std::invalid_argument(name + ".tx_power must be > 0");
    }
    if (!(path_loss_exp > 2.0)) {
        throw std::invalid_argument(name + ".path_loss_exp must be > 2");
    }
    if (!(power_coeff_a >= 0.0)) {
        throw std::invalid_argument(name + ".power_coeff_a must be >= 0");
    }
    if (!(power_coeff_b >= 0.0)) {
        throw std::invalid_argument(name + ".power_coeff_b must be >= 0");
    }
}

void CREPolicy::validate() const {
    if (!(bias_b2 > 0.0)) {
        throw std::invalid_argument("cre.bias_b2 must be > 0");
    }
    if (!(bias_b1 >= bias_b2)) {
        throw std::invalid_argument("cre.bias_b1 must be >= cre.bias_b2");
    }
    if (!(partition_eta > 0.0 && partition_eta < 1.0)) {
        throw std::invalid_argument("cre.partition_eta must lie in (0,1)");
    }
    if (!(power_beta > 0.0 && power_beta <= 1.0)) {
        throw std::invalid_argument("cre.power_beta must lie in (0,1]");
    }
}

void NetworkParams::validate() const {
    tier1.validate("tier1");
    tier2.validate("tier2");
    cre.validate();
    if (!(user_density >= 0.0)) {
        throw std::invalid_argument("user_density must be >= 0");
    }
    if (!(bandwidth_hz > 0.0)) {
        throw std::invalid_argument("bandwidth_hz must be > 0");
    }
    if (!(noise_psd >= 0.0)) {
        throw std::invalid_argument("noise_psd must be >= 0");
    }
    if (!(rate_target_macro > 0.0)) {
        throw std::invalid_argument("rate_target_macro must be > 0");
    }
    if (!(rate_target_small >= rate_target_macro)) {
        throw std::invalid_argument("rate_target_small must be >= rate_target_macro");
    }
}

double noise_power(const NetworkParams& params) {
    return params.noise_psd * params.bandwidth_hz;
}

double total_bs_power(const TierParams& tier) {
    return tier.power_coeff_a * tier.tx_power + tier.power_coeff_b;
}

NetworkParams default_params() {
    NetworkParams p;
    p.tier1 = {per_km2_to_per_m2(1.0), 10.0, 3.5, 22.6, 412.4};
    p.tier2 = {per_km2_to_per_m2(10.0), 0.1, 4.0, 5.5, 32.0};
    p.user_density = per_km2_to_per_m2(100.0);
    p.bandwidth_hz = 10e6;
    p.noise_psd = dbm_to_watts(-174.0);
    p.cre.bias_b1 = db_to_linear(10.0);
    p.cre.bias_b2 = db_to_linear(2.5);
    p.cre.partition_eta = 0.2;
    p.cre.power_beta = db_to_linear(-10.0);
    p.rate_target_macro = 300e3;
    p.rate_target_small = 1200e3;
    return p;
}

const char* to_string(ScheduleClass l) {
    switch (l) {
        case ScheduleClass::B: return "B";
        case ScheduleClass::Bbar: return "Bbar";
        case ScheduleClass::D: return "D";
        default: return "Dbar";
    }
}

const char* to_string(UserSet s) {
    switch (s) {
        case UserSet::U1: return "u1";
        case UserSet::UD: return "uD";
        default: return "uDbar";
    }
}

}  // namespace hetnet
