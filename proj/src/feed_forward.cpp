#include "zalm/feed_forward.hpp"

#include <cmath>
#include <stdexcept>

namespace zalm {

DensityMatrix delay_and_store(const DensityMatrix& state,
                              std::span<const int> signal_qubits,
                              double duration_ps, const NoiseConfig& cfg) {
    if (duration_ps < 0.0)
        throw std::invalid_argument("delay_and_store: negative duration");
    const double p = 1.0 - std::exp(-cfg.memory_depolar_rate_hz * duration_ps * 1e-12);
    DensityMatrix out = state;
    for (int q : signal_qubits) out = depolarize(out, q, p);
    return out;
}

DensityMatrix apply_corrections(const DensityMatrix& state,
                                std::span<const PauliOp> corrections,
                                const NoiseConfig& cfg) {
    DensityMatrix out = state;
    for (const PauliOp& op : corrections) {
        out = apply_pauli(out, op);
        out = depolarize(out, op.target, cfg.gate_error_prob_single);
    }
    return out;
}

FlyingPhoton fiber_transmit(FlyingPhoton photon, const FiberConfig& cfg, Rng& rng) {
    if (!photon.alive) throw std::invalid_argument("fiber_transmit: dead photon");
    const double survive =
        std::pow(10.0, -cfg.attenuation_db_per_km * cfg.internode_length_km / 10.0);
    if (!rng.bernoulli(survive)) photon.alive = false;
    photon.arrival_time_ps +=
        cfg.internode_length_km * cfg.refractive_index / kSpeedOfLight * 1e12;
    return photon;
}

} // namespace zalm
