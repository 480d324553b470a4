#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hetnet/model.hpp"
#include "hetnet/results.hpp"

// System-level simulator: samples Poisson networks in a square window around
// the typical user at the origin, applies the two-stage biased association,
// the partitioned resource scheme and the per-class SINR model, and produces
// empirical coverage estimates with Wilson confidence intervals.

namespace hetnet {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct SimulationSettings {
    double window_half_width = 10000.0;  // m, window is [-L, L]^2
    long trials = 10000;
    std::uint64_t seed = 1;
    double ci_level = 0.99;
    int threads = 0;  // 0 = hardware concurrency

    // The window must dwarf the sparser tier's nearest-BS scale.
    void validate(const NetworkParams& params) const;
};

struct NetworkRealization {
    std::vector<Vec2> tier1_bs;
    std::vector<Vec2> tier2_bs;
    // users[0] is the typical user pinned at the origin; the rest are the
    // Poisson user field (present only when sampled with users).
    std::vector<Vec2> users;
    int resample_attempts = 0;  // degenerate windows redrawn before this one
    bool tier_missing = false;  // exactly one tier absent from the window
};

struct ClassifyResult {
    UserSet user_set = UserSet::U1;
    int serving_tier = 1;
    int bs_index = -1;          // into the serving tier's BS list
    double serving_distance = 0.0;
    double d1 = 0.0;            // nearest tier-1 distance
    double d2 = 0.0;            // nearest tier-2 distance
};

struct TypicalUserOutcome {
    UserSet user_set = UserSet::U1;
    ScheduleClass schedule_class = ScheduleClass::Bbar;
    double sinr = 0.0;       // linear
    long cell_load = 1;      // same-set users sharing the serving BS, >= 1
    double rate = 0.0;       // bit/s, (W / cell_load) * log2(1 + sinr)
    double ee = 0.0;         // bit/s per watt of the serving BS's total draw
};

// Draws one network: per-tier BS counts ~ Poisson(lambda (2L)^2), positions
// uniform in the window, fully determined by (seed, trial). A window with no
// BS of either tier is redrawn from a derived substream and counted in
// resample_attempts.
NetworkRealization sample_network(const NetworkParams& params,
                                  const SimulationSettings& settings,
                                  std::uint64_t trial, bool with_users = true);

// Two-stage biased association for a user at `point`. If one tier is absent
// from the window the comparison uses the present tier only.
ClassifyResult classify_user(const NetworkRealization& world, Vec2 point,
                             const NetworkParams& params);

// Classification from precomputed nearest distances.
UserSet classify_from_distances(double d1, double d2, const NetworkParams& params);

// Full per-trial outcome for the typical user: schedule class (macro users
// land on reduced-power resources with probability eta), SINR with fresh
// unit-mean exponential fading per link, same-set cell load, rate and EE.
TypicalUserOutcome typical_user_metrics(const NetworkRealization& world,
                                        const NetworkParams& params,
                                        std::uint64_t seed, std::uint64_t trial,
                                        bool need_load = true);

// Deterministic-fading variant for hand-checkable scenarios: `fading` is
// called once for the serving link and once per interfering BS (tier 1 in
// storage order, then tier 2), `sched_uniform` supplies the scheduling draw.
TypicalUserOutcome typical_user_metrics(const NetworkRealization& world,
                                        const NetworkParams& params,
                                        const std::function<double()>& fading,
                                        const std::function<double()>& sched_uniform,
                                        bool need_load = true);

struct TrialLog {
    long resampled_windows = 0;  // degenerate redraws across the run
    long tier_missing = 0;       // trials where one tier was absent
};

// All per-trial outcomes for (seed, trial = 0..trials-1). Trials execute
// concurrently; outcome i depends only on (seed, i), so results are
// independent of the thread count.
std::vector<TypicalUserOutcome> run_trials(const NetworkParams& params,
                                           const SimulationSettings& settings,
                                           bool need_load, TrialLog* log = nullptr);

struct AssociationEstimate {
    CoverageResult u1, ud, udbar;
    TrialLog log;
};

// Empirical association-set frequencies over settings.trials typical users
// (one fresh network per user). Users are not sampled; only the BS tiers.
AssociationEstimate estimate_association(const NetworkParams& params,
                                         const SimulationSettings& settings);

struct CoverageEstimate {
    // One overall row plus one row per realized schedule class, for every
    // threshold, in threshold order.
    std::vector<CoverageResult> rows;
    TrialLog log;

    const CoverageResult* find(double threshold, const std::string& domain) const;
};

// Empirical coverage curve for one metric over a shared trial set. Rate
// thresholds are rho_scale multipliers (see CoverageResult). Requires
// trials >= 1000.
CoverageEstimate estimate_coverage(Metric metric,
                                   const std::vector<double>& thresholds,
                                   const NetworkParams& params,
                                   const SimulationSettings& settings);

}  // namespace hetnet
