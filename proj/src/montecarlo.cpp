#include "hetnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "hetnet/rng.hpp"
#include "hetnet/stats.hpp"

namespace hetnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dist2(Vec2 a, Vec2 b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Uniform bucket grid for nearest-point queries over a BS tier.
class PointGrid {
public:
    PointGrid(const std::vector<Vec2>& pts, double half_width, double density)
        : pts_(pts), half_width_(half_width) {
        // aim for O(1) points per cell
        const double target = density > 0.0 ? 1.0 / std::sqrt(density) : half_width;
        cell_ = std::clamp(target, 2.0 * half_width / 512.0, 2.0 * half_width);
        n_ = std::max(1, static_cast<int>(std::ceil(2.0 * half_width / cell_)));
        cells_.resize(static_cast<std::size_t>(n_) * n_);
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
            cells_[cell_index(pts[i])].push_back(i);
        }
    }

    // nearest point to q: {index, distance}; {-1, inf} when empty
    std::pair<int, double> nearest(Vec2 q) const {
        if (pts_.empty()) return {-1, kInf};
        const int cx = coord(q.x), cy = coord(q.y);
        int best = -1;
        double best_d2 = kInf;
        const int max_ring = n_;  // covers the whole grid from any clamped cell
        for (int r = 0; r <= max_ring; ++r) {
            if (best >= 0) {
                const double reach = (r - 1) * cell_;
                if (reach > 0.0 && reach * reach > best_d2) break;
            }
            scan_ring(q, cx, cy, r, best, best_d2);
        }
        return {best, std::sqrt(best_d2)};
    }

private:
    int coord(double v) const {
        const int c = static_cast<int>(std::floor((v + half_width_) / cell_));
        return std::clamp(c, 0, n_ - 1);
    }
    std::size_t cell_index(Vec2 p) const {
        return static_cast<std::size_t>(coord(p.y)) * n_ + coord(p.x);
    }
    void scan_cell(Vec2 q, int ix, int iy, int& best, double& best_d2) const {
        if (ix < 0 || iy < 0 || ix >= n_ || iy >= n_) return;
        for (int i : cells_[static_cast<std::size_t>(iy) * n_ + ix]) {
            const double d2 = dist2(pts_[i], q);
            if (d2 < best_d2) {
                best_d2 = d2;
                best = i;
            }
        }
    }
    void scan_ring(Vec2 q, int cx, int cy, int r, int& best, double& best_d2) const {
        if (r == 0) {
            scan_cell(q, cx, cy, best, best_d2);
            return;
        }
        for (int dx = -r; dx <= r; ++dx) {
            scan_cell(q, cx + dx, cy - r, best, best_d2);
            scan_cell(q, cx + dx, cy + r, best, best_d2);
        }
        for (int dy = -r + 1; dy <= r - 1; ++dy) {
            scan_cell(q, cx - r, cy + dy, best, best_d2);
            scan_cell(q, cx + r, cy + dy, best, best_d2);
        }
    }

    const std::vector<Vec2>& pts_;
    double half_width_;
    double cell_ = 0.0;
    int n_ = 0;
    std::vector<std::vector<int>> cells_;
};

void sample_tier(Rng& rng, double density, double half_width,
                 std::vector<Vec2>& out) {
    const double area = 4.0 * half_width * half_width;
    const long n = rng.poisson(density * area);
    out.clear();
    out.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double x = rng.uniform(-half_width, half_width);
        const double y = rng.uniform(-half_width, half_width);
        out.push_back({x, y});
    }
}

std::pair<int, double> nearest_linear(const std::vector<Vec2>& pts, Vec2 q) {
    int best = -1;
    double best_d2 = kInf;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        const double d2 = dist2(pts[i], q);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return {best, best < 0 ? kInf : std::sqrt(best_d2)};
}

}  // namespace

void SimulationSettings::validate(const NetworkParams& params) const {
    if (trials < 1) {
        throw std::invalid_argument("SimulationSettings.trials must be >= 1");
    }
    if (!(ci_level > 0.0 && ci_level < 1.0)) {
        throw std::invalid_argument("SimulationSettings.ci_level must lie in (0,1)");
    }
    const double sparse = std::min(params.tier1.density, params.tier2.density);
    const double mean_nearest = 0.5 / std::sqrt(sparse);
    if (!(mean_nearest < window_half_width / 10.0)) {
        throw std::invalid_argument(
            "SimulationSettings.window_half_width too small: expected nearest-BS "
            "distance of the sparser tier (" + std::to_string(mean_nearest) +
            " m) must be < window_half_width/10");
    }
}

NetworkRealization sample_network(const NetworkParams& params,
                                  const SimulationSettings& settings,
                                  std::uint64_t trial, bool with_users) {
    const double L = settings.window_half_width;
    NetworkRealization world;
    for (std::uint64_t attempt = 0;; ++attempt) {
        if (attempt > 1000) {
            throw std::runtime_error(
                "sample_network: window degenerate in 1000 consecutive redraws");
        }
        Rng rng1(settings.seed, trial, StreamPurpose::tier1_positions, attempt);
        Rng rng2(settings.seed, trial, StreamPurpose::tier2_positions, attempt);
        sample_tier(rng1, params.tier1.density, L, world.tier1_bs);
        sample_tier(rng2, params.tier2.density, L, world.tier2_bs);
        if (world.tier1_bs.empty() && world.tier2_bs.empty()) {
            continue;  // redraw with the next derived substream
        }
        world.resample_attempts = static_cast<int>(attempt);
        world.tier_missing = world.tier1_bs.empty() || world.tier2_bs.empty();
        if (with_users) {
            Rng rngu(settings.seed, trial, StreamPurpose::user_positions, attempt);
            sample_tier(rngu, params.user_density, L, world.users);
            world.users.insert(world.users.begin(), Vec2{0.0, 0.0});
        }
        return world;
    }
}

UserSet classify_from_distances(double d1, double d2, const NetworkParams& params) {
    const double brp1 = d1 < kInf
                            ? params.tier1.tx_power * std::pow(d1, -params.tier1.path_loss_exp)
                            : 0.0;
    const double brp2_base =
        d2 < kInf ? params.tier2.tx_power * std::pow(d2, -params.tier2.path_loss_exp)
                  : 0.0;
    if (brp1 >= params.cre.bias_b1 * brp2_base) {
        return UserSet::U1;
    }
    if (brp1 >= params.cre.bias_b2 * brp2_base) {
        return UserSet::UD;
    }
    return UserSet::UDbar;
}

ClassifyResult classify_user(const NetworkRealization& world, Vec2 point,
                             const NetworkParams& params) {
    const auto [i1, d1] = nearest_linear(world.tier1_bs, point);
    const auto [i2, d2] = nearest_linear(world.tier2_bs, point);
    if (i1 < 0 && i2 < 0) {
        throw std::runtime_error("classify_user: no base stations in window");
    }
    ClassifyResult r;
    r.user_set = classify_from_distances(d1, d2, params);
    r.d1 = d1;
    r.d2 = d2;
    if (r.user_set == UserSet::U1) {
        r.serving_tier = 1;
        r.bs_index = i1;
        r.serving_distance = d1;
    } else {
        r.serving_tier = 2;
        r.bs_index = i2;
        r.serving_distance = d2;
    }
    return r;
}

namespace {

double interference_sum(const std::vector<Vec2>& bs, Vec2 user, int skip_index,
                        double tx_power, double alpha,
                        const std::function<double()>& fading) {
    double sum = 0.0;
    for (int i = 0; i < static_cast<int>(bs.size()); ++i) {
        const double h = fading();
        if (i == skip_index) continue;  // fading draw consumed regardless
        const double d = std::sqrt(dist2(bs[i], user));
        sum += tx_power * h * std::pow(d, -alpha);
    }
    return sum;
}

double point_extent(const std::vector<Vec2>& pts) {
    double m = 0.0;
    for (const auto& p : pts) {
        m = std::max({m, std::abs(p.x), std::abs(p.y)});
    }
    return m;
}

TypicalUserOutcome metrics_impl(const NetworkRealization& world,
                                const NetworkParams& params,
                                const std::function<double()>& fading,
                                const std::function<double()>& sched_uniform,
                                bool need_load) {
    const Vec2 origin{0.0, 0.0};

    TypicalUserOutcome out;
    const auto cls = classify_user(world, origin, params);
    out.user_set = cls.user_set;

    switch (cls.user_set) {
        case UserSet::U1:
            out.schedule_class = sched_uniform() < params.cre.partition_eta
                                     ? ScheduleClass::B
                                     : ScheduleClass::Bbar;
            break;
        case UserSet::UD: out.schedule_class = ScheduleClass::D; break;
        default: out.schedule_class = ScheduleClass::Dbar; break;
    }

    const int tier = cls.serving_tier;
    const TierParams& serving = params.tier(tier);
    const double beta = params.cre.power_beta;
    const bool reduced = out.schedule_class == ScheduleClass::B ||
                         out.schedule_class == ScheduleClass::D;

    const double h0 = fading();
    const double signal_power =
        (out.schedule_class == ScheduleClass::B ? beta : 1.0) * serving.tx_power;
    const double signal =
        signal_power * h0 * std::pow(cls.serving_distance, -serving.path_loss_exp);
    const double i1 =
        interference_sum(world.tier1_bs, origin, tier == 1 ? cls.bs_index : -1,
                         params.tier1.tx_power, params.tier1.path_loss_exp, fading);
    const double i2 =
        interference_sum(world.tier2_bs, origin, tier == 2 ? cls.bs_index : -1,
                         params.tier2.tx_power, params.tier2.path_loss_exp, fading);
    const double denom = (reduced ? beta : 1.0) * i1 + i2 + noise_power(params);
    out.sinr = signal / denom;

    out.cell_load = 1;
    if (need_load && world.users.size() > 1) {
        // Only users in the serving BS's neighborhood can attach to it; the
        // cutoff radius makes the skipped mass < 1e-14 per user.
        const double r_cut2 = 34.5 / (std::numbers::pi * serving.density);
        const Vec2 b0 = tier == 1 ? world.tier1_bs[cls.bs_index]
                                  : world.tier2_bs[cls.bs_index];
        const double half =
            std::max({point_extent(world.tier1_bs), point_extent(world.tier2_bs), 1.0});
        PointGrid g1(world.tier1_bs, half, params.tier1.density);
        PointGrid g2(world.tier2_bs, half, params.tier2.density);
        const UserSet wanted = assoc_set(out.schedule_class);
        long count = 0;
        for (std::size_t ui = 1; ui < world.users.size(); ++ui) {
            const Vec2 u = world.users[ui];
            if (dist2(u, b0) > r_cut2) continue;
            const auto [own_idx, own_d] = (tier == 1 ? g1 : g2).nearest(u);
            if (own_idx != cls.bs_index) continue;
            const auto [other_idx, other_d] = (tier == 1 ? g2 : g1).nearest(u);
            const double ud1 = tier == 1 ? own_d : other_d;
            const double ud2 = tier == 1 ? other_d : own_d;
            if (classify_from_distances(ud1, ud2, params) == wanted) {
                ++count;
            }
        }
        out.cell_load = 1 + count;
    }

    out.rate = params.bandwidth_hz / static_cast<double>(out.cell_load) *
               std::log2(1.0 + out.sinr);
    out.ee = out.rate / total_bs_power(serving);
    return out;
}

}  // namespace

TypicalUserOutcome typical_user_metrics(const NetworkRealization& world,
                                        const NetworkParams& params,
                                        std::uint64_t seed, std::uint64_t trial,
                                        bool need_load) {
    Rng fading_rng(seed, trial, StreamPurpose::fading);
    Rng sched_rng(seed, trial, StreamPurpose::scheduling);
    return metrics_impl(
        world, params, [&fading_rng] { return fading_rng.exponential(); },
        [&sched_rng] { return sched_rng.uniform(); }, need_load);
}

TypicalUserOutcome typical_user_metrics(const NetworkRealization& world,
                                        const NetworkParams& params,
                                        const std::function<double()>& fading,
                                        const std::function<double()>& sched_uniform,
                                        bool need_load) {
    return metrics_impl(world, params, fading, sched_uniform, need_load);
}

std::vector<TypicalUserOutcome> run_trials(const NetworkParams& params,
                                           const SimulationSettings& settings,
                                           bool need_load, TrialLog* log) {
    params.validate();
    settings.validate(params);
    const long trials = settings.trials;
    std::vector<TypicalUserOutcome> outcomes(static_cast<std::size_t>(trials));

    int n_threads = settings.threads > 0
                        ? settings.threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp<long>(n_threads, 1, trials);

    std::vector<TrialLog> logs(static_cast<std::size_t>(n_threads));
    auto worker = [&](int t) {
        const long lo = trials * t / n_threads;
        const long hi = trials * (t + 1) / n_threads;
        for (long i = lo; i < hi; ++i) {
            const auto world = sample_network(params, settings,
                                              static_cast<std::uint64_t>(i), need_load);
            logs[t].resampled_windows += world.resample_attempts;
            logs[t].tier_missing += world.tier_missing ? 1 : 0;
            outcomes[static_cast<std::size_t>(i)] = typical_user_metrics(
                world, params, settings.seed, static_cast<std::uint64_t>(i), need_load);
        }
    };

    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    if (log) {
        TrialLog total;
        for (const auto& l : logs) {
            total.resampled_windows += l.resampled_windows;
            total.tier_missing += l.tier_missing;
        }
        *log = total;
    }
    return outcomes;
}

AssociationEstimate estimate_association(const NetworkParams& params,
                                         const SimulationSettings& settings) {
    params.validate();
    settings.validate(params);
    const long trials = settings.trials;

    int n_threads = settings.threads > 0
                        ? settings.threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp<long>(n_threads, 1, trials);

    struct Counts {
        long u1 = 0, ud = 0, udbar = 0;
        TrialLog log;
    };
    std::vector<Counts> partial(static_cast<std::size_t>(n_threads));

    auto worker = [&](int t) {
        Counts& c = partial[t];
        const long lo = trials * t / n_threads;
        const long hi = trials * (t + 1) / n_threads;
        for (long i = lo; i < hi; ++i) {
            const auto world = sample_network(params, settings,
                                              static_cast<std::uint64_t>(i), false);
            c.log.resampled_windows += world.resample_attempts;
            c.log.tier_missing += world.tier_missing ? 1 : 0;
            const auto [i1, d1] = nearest_linear(world.tier1_bs, {0.0, 0.0});
            const auto [i2, d2] = nearest_linear(world.tier2_bs, {0.0, 0.0});
            switch (classify_from_distances(d1, d2, params)) {
                case UserSet::U1: ++c.u1; break;
                case UserSet::UD: ++c.ud; break;
                default: ++c.udbar; break;
            }
        }
    };
    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    Counts total;
    for (const auto& c : partial) {
        total.u1 += c.u1;
        total.ud += c.ud;
        total.udbar += c.udbar;
        total.log.resampled_windows += c.log.resampled_windows;
        total.log.tier_missing += c.log.tier_missing;
    }

    const double z = normal_z_for_level(settings.ci_level);
    auto make = [&](const char* domain, long k) {
        CoverageResult r;
        r.metric = Metric::assoc;
        r.engine = Engine::mc;
        r.domain = domain;
        r.samples = trials;
        r.successes = k;
        r.value = static_cast<double>(k) / static_cast<double>(trials);
        r.ci_half_width = wilson_interval(k, trials, z).half_width;
        return r;
    };
    AssociationEstimate est;
    est.u1 = make("u1", total.u1);
    est.ud = make("uD", total.ud);
    est.udbar = make("uDbar", total.udbar);
    est.log = total.log;
    return est;
}

namespace {

bool metric_met(const TypicalUserOutcome& o, Metric metric, double threshold,
                const NetworkParams& params) {
    switch (metric) {
        case Metric::sinr: return o.sinr >= threshold;
        case Metric::rate:
            return o.rate >= threshold * params.rate_target(rate_tier(o.schedule_class));
        case Metric::ee: return o.ee >= threshold;
        default: throw std::invalid_argument("estimate_coverage: use estimate_association");
    }
}

}  // namespace

const CoverageResult* CoverageEstimate::find(double threshold,
                                             const std::string& domain) const {
    for (const auto& r : rows) {
        if (r.threshold == threshold && r.domain == domain) return &r;
    }
    return nullptr;
}

CoverageEstimate estimate_coverage(Metric metric,
                                   const std::vector<double>& thresholds,
                                   const NetworkParams& params,
                                   const SimulationSettings& settings) {
    if (metric == Metric::assoc) {
        throw std::invalid_argument("estimate_coverage: use estimate_association");
    }
    if (thresholds.empty()) {
        throw std::invalid_argument("estimate_coverage: thresholds must be non-empty");
    }
    if (settings.trials < 1000) {
        throw std::invalid_argument("estimate_coverage: needs trials >= 1000");
    }

    CoverageEstimate est;
    const bool need_load = metric != Metric::sinr;
    const auto outcomes = run_trials(params, settings, need_load, &est.log);
    const double z = normal_z_for_level(settings.ci_level);
    const long n = static_cast<long>(outcomes.size());

    auto push_row = [&](double threshold, const std::string& domain, long k,
                        long total) {
        CoverageResult r;
        r.metric = metric;
        r.engine = Engine::mc;
        r.threshold = threshold;
        r.domain = domain;
        r.samples = total;
        r.successes = k;
        if (total > 0) {
            r.value = static_cast<double>(k) / static_cast<double>(total);
            r.ci_half_width = wilson_interval(k, total, z).half_width;
        } else {
            r.value = std::numeric_limits<double>::quiet_NaN();
            r.ci_half_width = std::numeric_limits<double>::quiet_NaN();
        }
        r.low_confidence = total < 50;
        est.rows.push_back(std::move(r));
    };

    for (double t : thresholds) {
        long k_all = 0;
        long k_class[4] = {0, 0, 0, 0};
        long n_class[4] = {0, 0, 0, 0};
        for (const auto& o : outcomes) {
            const bool ok = metric_met(o, metric, t, params);
            const int c = static_cast<int>(o.schedule_class);
            ++n_class[c];
            if (ok) {
                ++k_all;
                ++k_class[c];
            }
        }
        push_row(t, "overall", k_all, n);
        for (ScheduleClass l : kAllClasses) {
            const int c = static_cast<int>(l);
            push_row(t, to_string(l), k_class[c], n_class[c]);
        }
    }
    return est;
}

}  // namespace hetnet
