#pragma once

#include <cmath>
#include <cstdint>

// Self-contained, platform-independent random streams. Every Monte Carlo
// trial derives its own generators from (seed, trial, purpose), so trials are
// reproducible bit-for-bit regardless of evaluation order or thread count.

namespace hetnet {

// splitmix64 finalizer, used for key derivation and state expansion.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

enum class StreamPurpose : std::uint64_t {
    tier1_positions = 1,
    tier2_positions = 2,
    user_positions = 3,
    fading = 4,
    scheduling = 5,
};

// xoshiro256++ seeded through splitmix64 from a derived key.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t trial, StreamPurpose purpose,
        std::uint64_t attempt = 0) {
        std::uint64_t key = mix64(seed);
        key = mix64(key ^ mix64(trial));
        key = mix64(key ^ mix64(static_cast<std::uint64_t>(purpose)));
        key = mix64(key ^ mix64(attempt));
        std::uint64_t sm = key;
        for (auto& word : state_) {
            sm += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = sm;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1], for safe logarithms
    double uniform_pos() { return ((next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // unit-mean exponential
    double exponential() { return -std::log(uniform_pos()); }

    long poisson(double mean) {
        if (mean <= 0.0) return 0;
        return mean < 10.0 ? poisson_small(mean) : poisson_ptrs(mean);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    // multiplication method, exact for small means
    long poisson_small(double mean) {
        const double limit = std::exp(-mean);
        long n = 0;
        double prod = uniform();
        while (prod > limit) {
            ++n;
            prod *= uniform();
        }
        return n;
    }

    // Hormann's transformed-rejection sampler (PTRS), exact for mean >= 10
    long poisson_ptrs(double mean) {
        const double slam = std::sqrt(mean);
        const double loglam = std::log(mean);
        const double b = 0.931 + 2.53 * slam;
        const double a = -0.059 + 0.02483 * b;
        const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
        const double vr = 0.9277 - 3.6224 / (b - 2.0);
        while (true) {
            const double u = uniform() - 0.5;
            const double v = uniform();
            const double us = 0.5 - std::abs(u);
            const long k = static_cast<long>(std::floor((2.0 * a / us + b) * u + mean + 0.43));
            if (us >= 0.07 && v <= vr) {
                return k;
            }
            if (k < 0 || (us < 0.013 && v > us)) {
                continue;
            }
            if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
                -mean + k * loglam - std::lgamma(k + 1.0)) {
                return k;
            }
        }
    }

    std::uint64_t state_[4];
};

}  // namespace hetnet
