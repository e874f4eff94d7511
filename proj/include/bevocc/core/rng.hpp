#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace bevocc {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

/// Deterministic RNG (xoshiro-free, splitmix64 core) with hand-rolled
/// distributions so sampled sequences are pinned by this code alone, not by
/// the standard library implementation. Sub-streams are derived with fork()
/// so adding draws in one place never perturbs another.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x5851f42d4c957f2dULL) {
        // Warm up so small/zero seeds decorrelate.
        next();
        next();
    }

    std::uint64_t next() { return detail::splitmix64(state_); }

    /// Independent child stream identified by a stable tag.
    Rng fork(std::string_view tag) const {
        std::uint64_t s = state_;
        return Rng(detail::splitmix64(s) ^ detail::fnv1a(tag));
    }

    Rng fork(std::uint64_t tag) const {
        std::uint64_t s = state_ ^ (tag * 0x9e3779b97f4a7c15ULL);
        return Rng(detail::splitmix64(s));
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    bool bernoulli(double p) { return uniform() < p; }

    template <typename It>
    void shuffle(It first, It last) {
        const std::int64_t n = last - first;
        for (std::int64_t i = n - 1; i > 0; --i) {
            std::int64_t j = uniform_int(0, i);
            std::swap(first[i], first[j]);
        }
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace bevocc
