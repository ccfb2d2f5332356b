#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zalm/config.hpp"

namespace zalm {

enum class FailureStage { SOURCE, BS_LOSS, FILTER, DETECT, HERALD, FIBER, NONE };
inline constexpr int kNumFailureStages = 7;

struct TrialOutcome {
    bool heralded = false;
    std::optional<BellKind> bell;
    bool delivered = false;
    std::optional<double> fidelity; // to PsiMinus, post-correction
    std::optional<int> channel_index;
    FailureStage failure_stage = FailureStage::NONE;
};

struct Metrics {
    long n_trials = 0;
    long heralded_count = 0;
    long delivered_count = 0;
    double herald_rate = 0.0;
    double ebits_per_use = 0.0; // heralded AND both signals delivered
    double avg_fidelity = 0.0;  // mean over delivered trials
    double fidelity_stderr = 0.0;
    std::array<long, 4> bell_counts{};          // indexed by BellKind
    std::array<long, kNumFailureStages> stage_counts{};
};

// Returns the config with IDEAL-mode overrides applied: all insertion
// losses 0 dB, efficiency 1, emission probability 1, jitter 0, extinction
// 0, crosstalk 0, all gate/dephase/depolar probabilities 0. Fiber
// attenuation is retained.
SimConfig effective_config(SimConfig cfg);

// One end-to-end use of the source: emit x2 -> separate x2 -> beamsplit
// -> PBS -> DWDM -> detect -> herald -> state update -> delay -> Pauli
// corrections -> measurement dephasing -> fiber x2 -> fidelity. Failures
// are outcomes, not errors.
TrialOutcome run_trial(const SimConfig& effective, const DwdmGrid& grid, Rng& rng);

// Monte Carlo campaign with per-trial derived RNG streams. Deterministic
// for fixed (config, n_trials, seed) regardless of worker count;
// threads = 0 picks ZALM_SIM_THREADS or hardware concurrency.
Metrics run_campaign(const SimConfig& cfg, long n_trials, std::uint64_t seed,
                     int threads = 0);

struct SweepPoint {
    std::string value;
    Metrics metrics;
};

// Runs one campaign per value with the base config's seed, assigning
// `values[i]` to the config field named by `parameter_path`.
std::vector<SweepPoint> sweep(const SimConfig& cfg, const std::string& parameter_path,
                              const std::vector<std::string>& values, int threads = 0);

const char* to_string(FailureStage s);

} // namespace zalm
