#pragma once

#include <cstdint>
#include <random>

namespace zalm {

// Per-trial random stream. Each trial derives its own engine from
// (campaign seed, trial index), so results do not depend on how trials
// are scheduled across worker threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return dist_(eng_); }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform() < p;
    }

    double gaussian(double mean, double stdev) {
        if (stdev == 0.0) return mean;
        std::normal_distribution<double> d(mean, stdev);
        return d(eng_);
    }

    // Uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
        return d(eng_);
    }

private:
    std::mt19937_64 eng_;
    std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline Rng trial_rng(std::uint64_t campaign_seed, std::uint64_t trial_index) {
    std::uint64_t s = splitmix64(campaign_seed ^ splitmix64(trial_index + 1));
    return Rng(s);
}

} // namespace zalm
