#include "hetnet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hetnet {

namespace {

constexpr double kPi = std::numbers::pi;

// Exponent argument beyond which exp(-x) is treated as zero when choosing the
// outer truncation point (integrand below ~3e-20).
constexpr double kExpCutoff = 45.0;

double clamp_prob(double v) { return std::clamp(v, 0.0, 1.0); }

bool extra_expansion_active(const NetworkParams& p) {
    return p.cre.bias_b1 != p.cre.bias_b2;
}

// One term coef * u^power of an exponent sum(coef_i * u^(power_i)).
struct ExpTerm {
    double coef;
    double power;
};

// All outer integrals are taken over u = x^2, turning the dominant
// exp(-pi lambda x^2) factor into exp(-pi lambda u). The integrand is
// truncated where the exponent reaches kExpCutoff; the cut is placed at the
// narrowest term's own cutoff scale so that widely separated decay scales
// (strong density or power asymmetry between the tiers) keep the mass inside
// the integration interval.
double integrate_exp_kernel(const Integrand& f,
                            std::initializer_list<ExpTerm> exponent_terms,
                            const IntegrationSettings& settings) {
    double u_max = std::numeric_limits<double>::infinity();
    for (const ExpTerm& t : exponent_terms) {
        if (t.coef > 0.0) {
            u_max = std::min(u_max, std::pow(kExpCutoff / t.coef, 1.0 / t.power));
        }
    }
    if (!std::isfinite(u_max)) {
        throw std::logic_error("exp kernel without a decaying exponent term");
    }
    return integrate_finite(f, 0.0, u_max, settings);
}

struct AssocCoeffs {
    // exponent of the own-tier nearest-distance factor, pi*lambda_own
    double own;
    // coefficient and power of the cross-tier void factor
    double cross_b1;
    double cross_b2;
    double cross_pow;
};

// Exponent coefficients of the joint void probabilities behind Lemma-style
// association integrals, in the u = r^2 variable.
AssocCoeffs assoc_coeffs_tier1(const NetworkParams& p) {
    const double a1 = p.tier1.path_loss_exp, a2 = p.tier2.path_loss_exp;
    AssocCoeffs c;
    c.own = kPi * p.tier1.density;
    const double ratio_b1 = p.tier2.tx_power * p.cre.bias_b1 / p.tier1.tx_power;
    c.cross_b1 = kPi * p.tier2.density * std::pow(ratio_b1, 2.0 / a2);
    c.cross_b2 = 0.0;
    c.cross_pow = a1 / a2;
    return c;
}

AssocCoeffs assoc_coeffs_tier2(const NetworkParams& p) {
    const double a1 = p.tier1.path_loss_exp, a2 = p.tier2.path_loss_exp;
    AssocCoeffs c;
    c.own = kPi * p.tier2.density;
    c.cross_b1 = kPi * p.tier1.density *
                 std::pow(p.tier1.tx_power / (p.tier2.tx_power * p.cre.bias_b1), 2.0 / a1);
    c.cross_b2 = kPi * p.tier1.density *
                 std::pow(p.tier1.tx_power / (p.tier2.tx_power * p.cre.bias_b2), 2.0 / a1);
    c.cross_pow = a2 / a1;
    return c;
}

}  // namespace

AssociationProbs association_probabilities(const NetworkParams& params,
                                           const IntegrationSettings& settings) {
    params.validate();
    const AssocCoeffs t1 = assoc_coeffs_tier1(params);
    const AssocCoeffs t2 = assoc_coeffs_tier2(params);

    AssociationProbs out;
    out.a1 = kPi * params.tier1.density *
             integrate_exp_kernel(
                 [&](double u) {
                     return std::exp(-t1.own * u - t1.cross_b1 * std::pow(u, t1.cross_pow));
                 },
                 {{t1.own, 1.0}, {t1.cross_b1, t1.cross_pow}}, settings);
    out.a_dbar = kPi * params.tier2.density *
                 integrate_exp_kernel(
                     [&](double u) {
                         return std::exp(-t2.own * u - t2.cross_b2 * std::pow(u, t2.cross_pow));
                     },
                     {{t2.own, 1.0}, {t2.cross_b2, t2.cross_pow}}, settings);
    if (extra_expansion_active(params)) {
        // the first exponential (bias_b1 boundary) has the wider support
        out.a_d = kPi * params.tier2.density *
                  integrate_exp_kernel(
                      [&](double u) {
                          const double up = std::pow(u, t2.cross_pow);
                          return std::exp(-t2.own * u - t2.cross_b1 * up) -
                                 std::exp(-t2.own * u - t2.cross_b2 * up);
                      },
                      {{t2.own, 1.0}, {t2.cross_b1, t2.cross_pow}}, settings);
        out.a_d = std::max(0.0, out.a_d);
    } else {
        out.a_d = 0.0;
    }
    return out;
}

double serving_distance_pdf(UserSet l, double x_m, const NetworkParams& params,
                            const IntegrationSettings& settings) {
    params.validate();
    if (!(x_m >= 0.0)) {
        throw std::invalid_argument("serving_distance_pdf: x must be >= 0");
    }
    if (l == UserSet::UD && !extra_expansion_active(params)) {
        throw std::domain_error(
            "serving_distance_pdf: set uD is empty when bias_b1 == bias_b2");
    }
    const AssociationProbs probs = association_probabilities(params, settings);
    const double u = x_m * x_m;
    switch (l) {
        case UserSet::U1: {
            const AssocCoeffs c = assoc_coeffs_tier1(params);
            return 2.0 * kPi * params.tier1.density / probs.a1 * x_m *
                   std::exp(-c.own * u - c.cross_b1 * std::pow(u, c.cross_pow));
        }
        case UserSet::UDbar: {
            const AssocCoeffs c = assoc_coeffs_tier2(params);
            return 2.0 * kPi * params.tier2.density / probs.a_dbar * x_m *
                   std::exp(-c.own * u - c.cross_b2 * std::pow(u, c.cross_pow));
        }
        default: {
            const AssocCoeffs c = assoc_coeffs_tier2(params);
            const double up = std::pow(u, c.cross_pow);
            return 2.0 * kPi * params.tier2.density / probs.a_d * x_m *
                   (std::exp(-c.own * u - c.cross_b1 * up) -
                    std::exp(-c.own * u - c.cross_b2 * up));
        }
    }
}

namespace {

// S_l(T) evaluator with the association probabilities computed once and the
// T-dependent interference constants recomputed per threshold.
class SinrKernel {
public:
    SinrKernel(const NetworkParams& params, const IntegrationSettings& settings,
               ClassDInterference d_form)
        : p_(params), settings_(settings), d_form_(d_form),
          probs_(association_probabilities(params, settings)),
          sigma2_(noise_power(params)) {}

    const AssociationProbs& association() const { return probs_; }

    double coverage(ScheduleClass l, double T) const {
        if (!(T > 0.0)) {
            throw std::domain_error("sinr coverage: threshold must be > 0");
        }
        switch (l) {
            case ScheduleClass::B: return macro_class(T, p_.cre.power_beta);
            case ScheduleClass::Bbar: return macro_class(T, 1.0);
            case ScheduleClass::D: return expanded_class(T);
            default: return small_class(T);
        }
    }

private:
    // Classes B / Bbar: serving tier 1 at distance x, tier-2 exclusion set by
    // bias_b1. beta_eff scales both the useful signal and the macro-tier
    // interference, so it cancels in the own-tier term and survives in the
    // noise and cross-tier terms.
    double macro_class(double T, double beta_eff) const {
        const double a1 = p_.tier1.path_loss_exp, a2 = p_.tier2.path_loss_exp;
        const double noise_c = T * sigma2_ / (beta_eff * p_.tier1.tx_power);
        const double own_c =
            kPi * p_.tier1.density * (1.0 + q_func(T, a1, settings_));
        const double cross_base =
            kPi * p_.tier2.density *
            std::pow(p_.tier2.tx_power * p_.cre.bias_b1 / p_.tier1.tx_power, 2.0 / a2);
        const double cross_c =
            cross_base *
            (1.0 + q_func(T / (beta_eff * p_.cre.bias_b1), a2, settings_));
        const double noise_pow = a1 / 2.0, cross_pow = a1 / a2;
        const double integral = integrate_exp_kernel(
            [=](double u) {
                return std::exp(-noise_c * std::pow(u, noise_pow) - own_c * u -
                                cross_c * std::pow(u, cross_pow));
            },
            {{noise_c, noise_pow}, {own_c, 1.0}, {cross_c, cross_pow}}, settings_);
        return kPi * p_.tier1.density * integral / probs_.a1;
    }

    // Class Dbar: serving tier 2, macro exclusion set by bias_b2, full macro
    // power.
    double small_class(double T) const {
        const double a1 = p_.tier1.path_loss_exp, a2 = p_.tier2.path_loss_exp;
        const double noise_c = T * sigma2_ / p_.tier2.tx_power;
        const double own_c =
            kPi * p_.tier2.density * (1.0 + q_func(T, a2, settings_));
        const double cross_c =
            kPi * p_.tier1.density *
            std::pow(p_.tier1.tx_power / (p_.tier2.tx_power * p_.cre.bias_b2), 2.0 / a1) *
            (1.0 + q_func(T * p_.cre.bias_b2, a1, settings_));
        const double noise_pow = a2 / 2.0, cross_pow = a2 / a1;
        const double integral = integrate_exp_kernel(
            [=](double u) {
                return std::exp(-noise_c * std::pow(u, noise_pow) - own_c * u -
                                cross_c * std::pow(u, cross_pow));
            },
            {{noise_c, noise_pow}, {own_c, 1.0}, {cross_c, cross_pow}}, settings_);
        return kPi * p_.tier2.density * integral / probs_.a_dbar;
    }

    // Class D: serving tier 2 with macro power reduced by beta; the nearest
    // macro BS sits between the bias_b1 and bias_b2 boundaries, giving a
    // difference of two exponentials.
    double expanded_class(double T) const {
        if (!extra_expansion_active(p_)) {
            throw std::domain_error(
                "sinr coverage: class D is degenerate when bias_b1 == bias_b2");
        }
        const double a1 = p_.tier1.path_loss_exp, a2 = p_.tier2.path_loss_exp;
        const double beta = p_.cre.power_beta;
        const double noise_c = T * sigma2_ / p_.tier2.tx_power;
        const double own_c =
            kPi * p_.tier2.density * (1.0 + q_func(T, a2, settings_));
        const double base_lo =
            kPi * p_.tier1.density *
            std::pow(p_.tier1.tx_power / (p_.tier2.tx_power * p_.cre.bias_b1), 2.0 / a1);
        const double base_hi =
            kPi * p_.tier1.density *
            std::pow(p_.tier1.tx_power / (p_.tier2.tx_power * p_.cre.bias_b2), 2.0 / a1);
        const double cross_lo =
            base_lo * (1.0 + q_func(beta * T * p_.cre.bias_b1, a1, settings_));
        double bracket_hi;
        if (d_form_ == ClassDInterference::published) {
            const double lower =
                std::pow(beta * T * p_.cre.bias_b1, -2.0 / a1);
            bracket_hi = 1.0 + std::pow(beta * T * p_.cre.bias_b2, 2.0 / a1) *
                                   tail_integral(lower, a1, settings_);
        } else {
            bracket_hi = 1.0 + q_func(beta * T * p_.cre.bias_b2, a1, settings_);
        }
        const double cross_hi = base_hi * bracket_hi;
        const double noise_pow = a2 / 2.0, cross_pow = a2 / a1;
        const double integral = integrate_exp_kernel(
            [=](double u) {
                const double up = std::pow(u, cross_pow);
                const double common =
                    std::exp(-noise_c * std::pow(u, noise_pow) - own_c * u);
                return common * (std::exp(-cross_lo * up) - std::exp(-cross_hi * up));
            },
            {{noise_c, noise_pow}, {own_c, 1.0}, {cross_lo, cross_pow}}, settings_);
        return kPi * p_.tier2.density * integral / probs_.a_d;
    }

    const NetworkParams& p_;
    IntegrationSettings settings_;
    ClassDInterference d_form_;
    AssociationProbs probs_;
    double sigma2_;
};

}  // namespace

double sinr_coverage_class(ScheduleClass l, double threshold,
                           const NetworkParams& params,
                           const IntegrationSettings& settings,
                           ClassDInterference d_form) {
    params.validate();
    SinrKernel kernel(params, settings, d_form);
    return clamp_prob(kernel.coverage(l, threshold));
}

double sinr_coverage_overall(double threshold, const NetworkParams& params,
                             const IntegrationSettings& settings,
                             ClassDInterference d_form) {
    params.validate();
    SinrKernel kernel(params, settings, d_form);
    const AssociationProbs& probs = kernel.association();
    const double eta = params.cre.partition_eta;
    double total =
        probs.a1 * (eta * kernel.coverage(ScheduleClass::B, threshold) +
                    (1.0 - eta) * kernel.coverage(ScheduleClass::Bbar, threshold)) +
        probs.a_dbar * kernel.coverage(ScheduleClass::Dbar, threshold);
    if (extra_expansion_active(params)) {
        total += probs.a_d * kernel.coverage(ScheduleClass::D, threshold);
    }
    return clamp_prob(total);
}

namespace {

double load_ratio(ScheduleClass l, const NetworkParams& params,
                  const AssociationProbs& probs) {
    return params.user_density * probs.of(assoc_set(l)) /
           params.tier(serving_tier(l)).density;
}

// ln P(N = n) for the tagged-BS population; gamma ratios in log space so the
// PMF stays finite well past n = 170.
double log_load_pmf(long n, double mu) {
    const double r = 3.5;
    return r * std::log(r) + std::lgamma(n + r) - std::lgamma(r) -
           std::lgamma(static_cast<double>(n)) +
           (n - 1) * std::log(mu) - (n + r) * std::log(r + mu);
}

double load_pmf_from_ratio(long n, double mu) {
    if (n < 1) {
        throw std::invalid_argument("cell_load_pmf: n must be >= 1");
    }
    if (mu <= 0.0) {
        return n == 1 ? 1.0 : 0.0;
    }
    if (n == 1) {
        // avoid 0*log(mu) ambiguity in the generic expression
        return std::pow(3.5 / (3.5 + mu), 4.5);
    }
    return std::exp(log_load_pmf(n, mu));
}

}  // namespace

double cell_load_pmf(ScheduleClass l, long n, const NetworkParams& params,
                     const IntegrationSettings& settings) {
    params.validate();
    if (assoc_set(l) == UserSet::UD && !extra_expansion_active(params)) {
        throw std::domain_error("cell_load_pmf: set uD is empty when bias_b1 == bias_b2");
    }
    const AssociationProbs probs = association_probabilities(params, settings);
    return load_pmf_from_ratio(n, load_ratio(l, params, probs));
}

double mean_cell_load(ScheduleClass l, const NetworkParams& params,
                      const IntegrationSettings& settings) {
    params.validate();
    if (assoc_set(l) == UserSet::UD && !extra_expansion_active(params)) {
        throw std::domain_error("mean_cell_load: set uD is empty when bias_b1 == bias_b2");
    }
    const AssociationProbs probs = association_probabilities(params, settings);
    return 1.0 + 1.28 * load_ratio(l, params, probs);
}

namespace {

// 2^(rho*n/W) - 1, or +inf once the exponent would overflow.
double rate_to_sinr_threshold(double rho_bps, double n, double bandwidth_hz) {
    const double ex = rho_bps * n / bandwidth_hz;
    if (ex > 900.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::exp2(ex) - 1.0;
}

double rate_coverage_series(const SinrKernel& kernel, ScheduleClass l,
                            double rho_bps, double mu,
                            const NetworkParams& params) {
    // Truncate once the PMF tail mass is < 1e-6 and the last five terms each
    // contributed < 1e-9; S_l decays double-exponentially in n, so the PMF
    // tail is the binding criterion.
    constexpr double kTailMass = 1e-6;
    constexpr double kTermEps = 1e-9;
    constexpr long kHardCap = 200000;

    double sum = 0.0;
    double cum_pmf = 0.0;
    int small_terms = 0;
    for (long n = 1; n <= kHardCap; ++n) {
        const double pn = load_pmf_from_ratio(n, mu);
        cum_pmf += pn;
        double term = 0.0;
        if (pn >= kTermEps) {
            const double T = rate_to_sinr_threshold(rho_bps, static_cast<double>(n),
                                                    params.bandwidth_hz);
            double s = 0.0;
            if (std::isfinite(T) && T > 0.0) {
                s = kernel.coverage(l, T);
            } else if (T == 0.0) {
                s = 1.0;
            }
            term = pn * s;
        }
        sum += term;
        small_terms = (term < kTermEps) ? small_terms + 1 : 0;
        if (1.0 - cum_pmf < kTailMass && small_terms >= 5) {
            return sum;
        }
    }
    throw std::runtime_error(
        "rate coverage series failed to converge; load PMF does not normalize");
}

}  // namespace

double rate_coverage_class_exact(ScheduleClass l, double rho_bps,
                                 const NetworkParams& params,
                                 const IntegrationSettings& settings) {
    params.validate();
    if (!(rho_bps > 0.0)) {
        throw std::domain_error("rate coverage: rho must be > 0");
    }
    if (assoc_set(l) == UserSet::UD && !extra_expansion_active(params)) {
        throw std::domain_error("rate coverage: class D is degenerate when bias_b1 == bias_b2");
    }
    SinrKernel kernel(params, settings, ClassDInterference::matched);
    const double mu = load_ratio(l, params, kernel.association());
    return clamp_prob(rate_coverage_series(kernel, l, rho_bps, mu, params));
}

double rate_coverage_class_meanload(ScheduleClass l, double rho_bps,
                                    const NetworkParams& params,
                                    const IntegrationSettings& settings) {
    params.validate();
    if (!(rho_bps > 0.0)) {
        throw std::domain_error("rate coverage: rho must be > 0");
    }
    if (assoc_set(l) == UserSet::UD && !extra_expansion_active(params)) {
        throw std::domain_error("rate coverage: class D is degenerate when bias_b1 == bias_b2");
    }
    SinrKernel kernel(params, settings, ClassDInterference::matched);
    const double n_mean = 1.0 + 1.28 * load_ratio(l, params, kernel.association());
    const double T = rate_to_sinr_threshold(rho_bps, n_mean, params.bandwidth_hz);
    if (!std::isfinite(T)) {
        return 0.0;
    }
    return clamp_prob(kernel.coverage(l, T));
}

double rate_coverage_overall(double rho_scale, const NetworkParams& params,
                             RateMethod method,
                             const IntegrationSettings& settings) {
    params.validate();
    if (!(rho_scale > 0.0)) {
        throw std::domain_error("rate coverage: rho_scale must be > 0");
    }
    auto klass = [&](ScheduleClass l) {
        const double rho = rho_scale * params.rate_target(rate_tier(l));
        return method == RateMethod::exact
                   ? rate_coverage_class_exact(l, rho, params, settings)
                   : rate_coverage_class_meanload(l, rho, params, settings);
    };
    const AssociationProbs probs = association_probabilities(params, settings);
    const double eta = params.cre.partition_eta;
    double total = probs.a1 * (eta * klass(ScheduleClass::B) +
                               (1.0 - eta) * klass(ScheduleClass::Bbar)) +
                   probs.a_dbar * klass(ScheduleClass::Dbar);
    if (extra_expansion_active(params)) {
        total += probs.a_d * klass(ScheduleClass::D);
    }
    return clamp_prob(total);
}

double ee_coverage_class(ScheduleClass l, double tau_bps_per_w,
                         const NetworkParams& params, RateMethod method,
                         const IntegrationSettings& settings) {
    if (!(tau_bps_per_w > 0.0)) {
        throw std::domain_error("ee coverage: tau must be > 0");
    }
    const double rho = tau_bps_per_w * total_bs_power(params.tier(serving_tier(l)));
    return method == RateMethod::exact
               ? rate_coverage_class_exact(l, rho, params, settings)
               : rate_coverage_class_meanload(l, rho, params, settings);
}

double ee_coverage_overall(double tau_bps_per_w, const NetworkParams& params,
                           RateMethod method,
                           const IntegrationSettings& settings) {
    params.validate();
    if (!(tau_bps_per_w > 0.0)) {
        throw std::domain_error("ee coverage: tau must be > 0");
    }
    const AssociationProbs probs = association_probabilities(params, settings);
    const double eta = params.cre.partition_eta;
    auto klass = [&](ScheduleClass l) {
        return ee_coverage_class(l, tau_bps_per_w, params, method, settings);
    };
    double total = probs.a1 * (eta * klass(ScheduleClass::B) +
                               (1.0 - eta) * klass(ScheduleClass::Bbar)) +
                   probs.a_dbar * klass(ScheduleClass::Dbar);
    if (extra_expansion_active(params)) {
        total += probs.a_d * klass(ScheduleClass::D);
    }
    return clamp_prob(total);
}

}  // namespace hetnet
