#include <doctest.h>

#include <cmath>

#include "hetnet/analytic.hpp"
#include "hetnet/quadrature.hpp"
#include "hetnet/rng.hpp"

using namespace hetnet;

namespace {

NetworkParams defaults() { return default_params(); }

NetworkParams traditional() {
    NetworkParams p = default_params();
    p.cre.bias_b1 = p.cre.bias_b2;
    return p;
}

}  // namespace

TEST_CASE("association reduces to the density ratio in the symmetric case") {
    // equal powers and exponents, no biases: the integral collapses to
    // lambda1 / (lambda1 + lambda2)
    NetworkParams p = defaults();
    p.tier1 = {per_km2_to_per_m2(1.0), 5.0, 4.0, 22.6, 412.4};
    p.tier2 = {per_km2_to_per_m2(10.0), 5.0, 4.0, 5.5, 32.0};
    p.cre.bias_b1 = 1.0;
    p.cre.bias_b2 = 1.0;
    const AssociationProbs probs = association_probabilities(p);
    CHECK(probs.a1 == doctest::Approx(1.0 / 11.0).epsilon(1e-9));
    CHECK(probs.a_d == 0.0);
    CHECK(probs.a_dbar == doctest::Approx(10.0 / 11.0).epsilon(1e-9));
}

TEST_CASE("equal biases empty the expanded set exactly") {
    const AssociationProbs probs = association_probabilities(traditional());
    CHECK(probs.a_d == 0.0);
    CHECK(probs.a1 + probs.a_dbar == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("association probabilities partition unity on random scenarios") {
    Rng rng(20240401, 0, StreamPurpose::scheduling);
    for (int i = 0; i < 25; ++i) {
        NetworkParams p = defaults();
        p.tier1.density = per_km2_to_per_m2(std::exp(rng.uniform(std::log(0.1), std::log(20.0))));
        p.tier2.density = per_km2_to_per_m2(std::exp(rng.uniform(std::log(0.5), std::log(50.0))));
        p.tier1.tx_power = std::exp(rng.uniform(std::log(1.0), std::log(40.0)));
        p.tier2.tx_power = std::exp(rng.uniform(std::log(0.01), std::log(1.0)));
        p.tier1.path_loss_exp = rng.uniform(2.6, 5.0);
        p.tier2.path_loss_exp = rng.uniform(2.6, 5.0);
        p.cre.bias_b2 = std::exp(rng.uniform(0.0, std::log(10.0)));
        p.cre.bias_b1 = p.cre.bias_b2 * std::exp(rng.uniform(0.0, std::log(10.0)));
        const AssociationProbs probs = association_probabilities(p);
        CHECK(probs.a1 >= 0.0);
        CHECK(probs.a_d >= 0.0);
        CHECK(probs.a_dbar >= 0.0);
        CHECK(std::abs(probs.a1 + probs.a_d + probs.a_dbar - 1.0) <= 1e-9);
    }
}

TEST_CASE("serving-distance densities") {
    const NetworkParams p = defaults();
    SUBCASE("vanish at zero") {
        CHECK(serving_distance_pdf(UserSet::U1, 0.0, p) == 0.0);
        CHECK(serving_distance_pdf(UserSet::UD, 0.0, p) == 0.0);
        CHECK(serving_distance_pdf(UserSet::UDbar, 0.0, p) == 0.0);
    }
    SUBCASE("normalize to one") {
        for (UserSet s : {UserSet::U1, UserSet::UD, UserSet::UDbar}) {
            const double total = integrate_semi_infinite(
                [&](double x) { return serving_distance_pdf(s, x, p); });
            CHECK(std::abs(total - 1.0) <= 1e-8);
        }
    }
    SUBCASE("empty expanded set is an error") {
        CHECK_THROWS_AS(serving_distance_pdf(UserSet::UD, 100.0, traditional()),
                        std::domain_error);
    }
}

TEST_CASE("full power makes the two macro classes identical") {
    NetworkParams p = defaults();
    p.cre.power_beta = 1.0;
    for (double T : {0.1, 1.0, 10.0}) {
        const double sb = sinr_coverage_class(ScheduleClass::B, T, p);
        const double sbb = sinr_coverage_class(ScheduleClass::Bbar, T, p);
        CHECK(std::abs(sb - sbb) <= 1e-9);
    }
}

TEST_CASE("coverage tends to one as the threshold vanishes") {
    const NetworkParams p = defaults();
    for (ScheduleClass l : kAllClasses) {
        CHECK(sinr_coverage_class(l, 1e-12, p) == doctest::Approx(1.0).epsilon(1e-6));
    }
    CHECK(sinr_coverage_overall(1e-12, p) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("per-class and overall SINR coverage are non-increasing in T") {
    const NetworkParams p = defaults();
    for (ScheduleClass l : kAllClasses) {
        double prev = 2.0;
        for (int i = 0; i < 30; ++i) {
            const double T = std::pow(10.0, -2.0 + 4.0 * i / 29.0);
            const double s = sinr_coverage_class(l, T, p);
            CHECK(s <= prev + 1e-7);
            CHECK(s >= 0.0);
            CHECK(s <= 1.0);
            prev = s;
        }
    }
    double prev = 2.0;
    for (int i = 0; i < 30; ++i) {
        const double T = std::pow(10.0, -2.0 + 4.0 * i / 29.0);
        const double s = sinr_coverage_overall(T, p);
        CHECK(s <= prev + 1e-7);
        prev = s;
    }
}

TEST_CASE("degenerate class D") {
    const NetworkParams p = traditional();
    CHECK_THROWS_AS(sinr_coverage_class(ScheduleClass::D, 1.0, p), std::domain_error);
    CHECK_THROWS_AS(rate_coverage_class_exact(ScheduleClass::D, 1e5, p),
                    std::domain_error);
    CHECK_THROWS_AS(cell_load_pmf(ScheduleClass::D, 1, p), std::domain_error);
    // the overall mixture simply drops the empty class
    CHECK_NOTHROW(sinr_coverage_overall(1.0, p));
    CHECK_NOTHROW(rate_coverage_overall(1.0, p, RateMethod::meanload));
}

TEST_CASE("cell load PMF") {
    const NetworkParams p = defaults();
    SUBCASE("n = 0 rejected") {
        CHECK_THROWS_AS(cell_load_pmf(ScheduleClass::Bbar, 0, p),
                        std::invalid_argument);
    }
    SUBCASE("sums to one and matches the closed-form mean") {
        const AssociationProbs probs = association_probabilities(p);
        for (ScheduleClass l : kAllClasses) {
            const double mu = p.user_density * probs.of(assoc_set(l)) /
                              p.tier(serving_tier(l)).density;
            double sum = 0.0, mean = 0.0;
            for (long n = 1; n <= 20000; ++n) {
                const double pn = cell_load_pmf(l, n, p);
                sum += pn;
                mean += n * pn;
                if (1.0 - sum < 1e-12 && n > 10) break;
            }
            CHECK(std::abs(sum - 1.0) <= 1e-6);
            // exact first moment of the PMF: 1 + (4.5/3.5) mu
            CHECK(mean == doctest::Approx(1.0 + 4.5 / 3.5 * mu).epsilon(1e-6));
            // the 1.28 approximation sits within 10% of the exact mean
            const double approx = mean_cell_load(l, p);
            CHECK(std::abs(approx - mean) / mean <= 0.10);
        }
    }
    SUBCASE("no other users pins the load at one") {
        NetworkParams solo = defaults();
        solo.user_density = 0.0;
        CHECK(cell_load_pmf(ScheduleClass::Bbar, 1, solo) == doctest::Approx(1.0));
        CHECK(cell_load_pmf(ScheduleClass::Bbar, 2, solo) == 0.0);
        CHECK(mean_cell_load(ScheduleClass::Bbar, solo) == doctest::Approx(1.0));
    }
}

TEST_CASE("rate coverage limits") {
    const NetworkParams p = defaults();
    SUBCASE("vanishing threshold") {
        CHECK(rate_coverage_class_exact(ScheduleClass::Bbar, 1e-3, p) ==
              doctest::Approx(1.0).epsilon(1e-6));
        CHECK(rate_coverage_class_meanload(ScheduleClass::Dbar, 1e-3, p) ==
              doctest::Approx(1.0).epsilon(1e-6));
        CHECK(rate_coverage_overall(1e-9, p) == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("no other users reduces to a single-user cell") {
        NetworkParams solo = defaults();
        solo.user_density = 0.0;
        const double rho = 500e3;
        const double direct = sinr_coverage_class(
            ScheduleClass::Bbar, std::exp2(rho / solo.bandwidth_hz) - 1.0, solo);
        CHECK(rate_coverage_class_exact(ScheduleClass::Bbar, rho, solo) ==
              doctest::Approx(direct).epsilon(1e-9));
        CHECK(rate_coverage_class_meanload(ScheduleClass::Bbar, rho, solo) ==
              doctest::Approx(direct).epsilon(1e-9));
    }
    SUBCASE("mean-load approximation stays near the exact series") {
        const double macro = rate_coverage_class_exact(ScheduleClass::Bbar, 300e3, p);
        const double macro_ml =
            rate_coverage_class_meanload(ScheduleClass::Bbar, 300e3, p);
        CHECK(std::abs(macro - macro_ml) <= 0.05);
        const double small = rate_coverage_class_exact(ScheduleClass::Dbar, 1200e3, p);
        const double small_ml =
            rate_coverage_class_meanload(ScheduleClass::Dbar, 1200e3, p);
        CHECK(std::abs(small - small_ml) <= 0.05);
    }
}

TEST_CASE("EE coverage is the rate coverage at the converted threshold") {
    const NetworkParams p = defaults();
    const double tau = 500.0;
    const double macro_power = total_bs_power(p.tier1);   // 638.4 W
    const double small_power = total_bs_power(p.tier2);   // 32.55 W
    CHECK(macro_power == doctest::Approx(638.4));
    CHECK(small_power == doctest::Approx(32.55));
    CHECK(ee_coverage_class(ScheduleClass::Bbar, tau, p) ==
          rate_coverage_class_exact(ScheduleClass::Bbar, tau * macro_power, p));
    CHECK(ee_coverage_class(ScheduleClass::Dbar, tau, p, RateMethod::meanload) ==
          rate_coverage_class_meanload(ScheduleClass::Dbar, tau * small_power, p));
    CHECK(ee_coverage_class(ScheduleClass::Bbar, 1e-9, p) ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(ee_coverage_overall(1e-9, p, RateMethod::meanload) ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("full power makes every overall metric independent of eta") {
    NetworkParams a = defaults();
    a.cre.power_beta = 1.0;
    a.cre.partition_eta = 0.2;
    NetworkParams b = a;
    b.cre.partition_eta = 0.8;

    CHECK(std::abs(sinr_coverage_overall(1.0, a) - sinr_coverage_overall(1.0, b)) <=
          1e-8);
    CHECK(std::abs(rate_coverage_overall(1.0, a, RateMethod::meanload) -
                   rate_coverage_overall(1.0, b, RateMethod::meanload)) <= 1e-8);
    CHECK(std::abs(ee_coverage_overall(500.0, a, RateMethod::exact) -
                   ee_coverage_overall(500.0, b, RateMethod::exact)) <= 1e-8);
}

TEST_CASE("offloading more users first helps then hurts the rate coverage") {
    // with power reduction, the overall rate coverage over the extra-bias
    // sweep climbs to an interior optimum and then declines
    std::vector<double> values;
    for (double b1_db = 2.5; b1_db <= 20.01; b1_db += 2.5) {
        NetworkParams p = default_params();
        p.cre.bias_b1 = db_to_linear(b1_db);
        values.push_back(rate_coverage_overall(1.0, p));
    }
    std::size_t peak = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[peak]) peak = i;
    }
    CHECK(peak > 0);
    CHECK(peak + 1 < values.size());
    CHECK(values[peak] > values.front());
}

TEST_CASE("larger ordinary bias degrades the EE coverage") {
    // growing bias_b2 moves users with poor macro-side geometry into the
    // ordinary small-cell set and shrinks the protected expanded ring; the
    // worst case is bias_b2 == bias_b1 (no expanded ring at all)
    double prev = 1.0;
    for (double b2_db : {0.0, 5.0, 10.0}) {
        NetworkParams p = default_params();
        p.cre.bias_b2 = db_to_linear(b2_db);
        const double c = ee_coverage_overall(20000.0, p, RateMethod::exact);
        CHECK(c < prev);
        prev = c;
    }
}

TEST_CASE("rate and EE coverages are non-increasing in their thresholds") {
    const NetworkParams p = defaults();
    double prev = 2.0;
    for (double scale : {0.1, 0.3, 0.6, 1.0, 1.5, 2.5, 4.0}) {
        const double r = rate_coverage_overall(scale, p, RateMethod::meanload);
        CHECK(r <= prev + 1e-7);
        CHECK(r >= 0.0);
        prev = r;
    }
    prev = 2.0;
    for (double tau : {50.0, 150.0, 400.0, 900.0, 2000.0, 5000.0}) {
        const double c = ee_coverage_overall(tau, p, RateMethod::meanload);
        CHECK(c <= prev + 1e-7);
        prev = c;
    }
}
