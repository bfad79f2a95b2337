#pragma once

#include <cstdint>
#include <vector>

#include "switchopt/solution.hpp"

namespace switchopt {

struct McConfig {
    std::uint64_t paths = 100000;
    double dt = 1e-3;
    double horizon = 0.0;  // 0 resolves to the default 40 / r
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    bool antithetic = true;
    // Paths stop integrating once the discount factor falls below this floor;
    // the bounded remainder is charged to the bias budget.
    double discount_floor = 1e-12;
    int threads = -1;  // -1: SWITCHOPT_THREADS env or hardware concurrency

    double resolved_horizon(double r) const {
        return horizon > 0.0 ? horizon : 40.0 / r;
    }
    void validate(double r) const;
};

struct McResult {
    double mean = 0.0;
    double std_error = 0.0;
    double switch_count_mean = 0.0;
    double abandon_fraction = 0.0;
    double truncation_fraction = 0.0;
    // Bound on systematic error: truncation/floor remainders plus the
    // grid-time event-detection term.
    double bias_budget = 0.0;
    std::uint64_t paths = 0;
};

// Estimate the performance criterion of the threshold strategy read off the
// solution, started from (z, x). Deterministic for a fixed (seed, config)
// regardless of worker count.
McResult simulate_value(const Solution& sol, int z, double x,
                        const McConfig& cfg);

enum class BoundaryName { Zeta, Delta, Gamma, Beta, Alpha };

// Same estimator with one boundary shifted by the relative amount; the value
// function is untouched, only the policy moves. Zero shift reproduces
// simulate_value bit for bit. Throws InvalidPerturbation when the shifted
// boundaries break the case ordering.
McResult simulate_perturbed(const Solution& sol, int z, double x,
                            const McConfig& cfg, BoundaryName which,
                            double rel_shift);

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++, seeded per stream by counter-mode splitmix64.
struct Xoshiro256pp {
    std::uint64_t s[4];

    static Xoshiro256pp stream(std::uint64_t seed, std::uint64_t index) {
        Xoshiro256pp rng;
        std::uint64_t st = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
        for (auto& w : rng.s) w = splitmix64(st);
        rng.s[0] |= 1;  // never the all-zero state
        return rng;
    }

    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    double u01() { return (next() >> 11) * 0x1.0p-53; }
};

// exp via 2^k * p(r) range reduction; relative error < 4e-16 for |x| <= 30.
double fast_exp(double x);

}  // namespace detail
}  // namespace switchopt
