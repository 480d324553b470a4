#pragma once

#include <cstddef>
#include <vector>

namespace hetnet {

// Quantile of the standard normal distribution (Acklam's rational
// approximation plus one Halley refinement; |error| < 1e-13).
double normal_quantile(double p);

// z for a two-sided confidence level, e.g. 0.99 -> 2.5758...
double normal_z_for_level(double level);

struct WilsonInterval {
    double center;
    double half_width;
    double lo() const { return center - half_width; }
    double hi() const { return center + half_width; }
    bool contains(double v) const { return v >= lo() && v <= hi(); }
};

// Wilson score interval for successes/trials at the given z.
WilsonInterval wilson_interval(long successes, long trials, double z);

// Two-sample Kolmogorov-Smirnov p-value (asymptotic).
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

}  // namespace hetnet
