#pragma once

#include "hetnet/model.hpp"
#include "hetnet/quadrature.hpp"

// Closed/semi-closed expressions for the two-tier network with two-bias
// offloading: association probabilities, serving-distance densities, and the
// per-class and overall SINR / rate / energy-efficiency coverages. Everything
// here is a pure function of immutable parameters; evaluations at different
// grid points can run concurrently.

namespace hetnet {

struct AssociationProbs {
    double a1 = 0.0;     // macro users
    double a_d = 0.0;    // extra-expanded small-cell users
    double a_dbar = 0.0; // original small-cell users

    double of(UserSet s) const {
        switch (s) {
            case UserSet::U1: return a1;
            case UserSet::UD: return a_d;
            default: return a_dbar;
        }
    }
};

struct CoverageCurvePoint {
    double threshold = 0.0;  // linear SINR, bit/s, or bit/s per W
    double value = 0.0;      // probability
};

enum class RateMethod { exact, meanload };

AssociationProbs association_probabilities(const NetworkParams& params,
                                           const IntegrationSettings& settings = {});

// f_{G_l}(x): density of the serving-BS distance for a user of the given
// association set, per meter. Errors when the set has zero probability
// (UD with bias_b1 == bias_b2).
double serving_distance_pdf(UserSet l, double x_m, const NetworkParams& params,
                            const IntegrationSettings& settings = {});

// Which exclusion radius the subtracted term of the class-D coverage uses for
// the macro-tier interference integral. `matched` pairs each void factor with
// the interference field beyond the same radius and is what the simulated
// association model produces; `published` keeps the inner radius in both
// terms, which overstates the class-D coverage by up to several percent.
// The two coincide as bias_b1 -> bias_b2.
enum class ClassDInterference { matched, published };

double sinr_coverage_class(ScheduleClass l, double threshold,
                           const NetworkParams& params,
                           const IntegrationSettings& settings = {},
                           ClassDInterference d_form = ClassDInterference::matched);

double sinr_coverage_overall(double threshold, const NetworkParams& params,
                             const IntegrationSettings& settings = {},
                             ClassDInterference d_form = ClassDInterference::matched);

// P(N = n) for the population of the association set q(l) sharing the
// typical user's serving BS; n >= 1 counts the typical user itself.
double cell_load_pmf(ScheduleClass l, long n, const NetworkParams& params,
                     const IntegrationSettings& settings = {});

// Mean of the cell_load_pmf approximation, 1 + 1.28 * lambda_u A_q / lambda_M.
double mean_cell_load(ScheduleClass l, const NetworkParams& params,
                      const IntegrationSettings& settings = {});

// P(W/N * log2(1+SINR) >= rho) with the load distributed per cell_load_pmf
// (load and SINR treated as independent).
double rate_coverage_class_exact(ScheduleClass l, double rho_bps,
                                 const NetworkParams& params,
                                 const IntegrationSettings& settings = {});

// Same, with the load pinned at its approximate mean.
double rate_coverage_class_meanload(ScheduleClass l, double rho_bps,
                                    const NetworkParams& params,
                                    const IntegrationSettings& settings = {});

// Mixture over classes with per-class thresholds rho_scale * rho_{k(l)}.
double rate_coverage_overall(double rho_scale, const NetworkParams& params,
                             RateMethod method = RateMethod::exact,
                             const IntegrationSettings& settings = {});

// P(rate / P_{M(l),total} >= tau): the EE threshold converts to the rate
// threshold tau * total_bs_power(serving tier) and delegates to the chosen
// rate-coverage method.
double ee_coverage_class(ScheduleClass l, double tau_bps_per_w,
                         const NetworkParams& params,
                         RateMethod method = RateMethod::exact,
                         const IntegrationSettings& settings = {});

double ee_coverage_overall(double tau_bps_per_w, const NetworkParams& params,
                           RateMethod method = RateMethod::exact,
                           const IntegrationSettings& settings = {});

}  // namespace hetnet
