#pragma once

#include <span>

#include "zalm/photon_source.hpp"
#include "zalm/quantum_core.hpp"
#include "zalm/rng.hpp"

namespace zalm {

struct NoiseConfig {
    double gate_error_prob_single = 1e-4;
    double gate_error_prob_two = 1e-3;
    double measurement_dephase_prob = 1e-3;
    double memory_depolar_rate_hz = 1e3;
    // SPDC-to-herald latency covered by the 4 m fibre loop.
    double storage_delay_ns = 20.0;
};

struct FiberConfig {
    double internode_length_km = 15.0;
    double attenuation_db_per_km = 0.2;
    double refractive_index = 1.468;
};

// Depolarizes each signal qubit with p = 1 - exp(-rate * duration) while
// the photons sit in the delay loop. Throws on negative duration.
DensityMatrix delay_and_store(const DensityMatrix& state,
                              std::span<const int> signal_qubits,
                              double duration_ps, const NoiseConfig& cfg);

// Pockels-cell Pauli feed-forward; each single-qubit gate is followed by
// a depolarization of its target with gate_error_prob_single.
DensityMatrix apply_corrections(const DensityMatrix& state,
                                std::span<const PauliOp> corrections,
                                const NoiseConfig& cfg);

// Loss-only quantum channel: survival 10^(-alpha L / 10); arrival time
// advanced by the group delay L n / c.
FlyingPhoton fiber_transmit(FlyingPhoton photon, const FiberConfig& cfg, Rng& rng);

} // namespace zalm
