#include "zalm/detection_heralding.hpp"

#include <algorithm>

namespace zalm {

std::optional<Click> detect(std::span<const FlyingPhoton> photons_at_arm,
                            BsPort port, PbsArm arm, int channel_index,
                            const DetectorConfig& cfg, Rng& rng) {
    int registered = 0;
    double time = 0.0;
    for (const FlyingPhoton& p : photons_at_arm) {
        if (!p.alive) continue;
        if (rng.bernoulli(cfg.efficiency)) {
            ++registered;
            time = std::max(time, p.arrival_time_ps);
        }
    }
    if (registered == 0) return std::nullopt;
    const int count = cfg.detector_type == DetectorType::PNR ? registered : 1;
    return Click{port, arm, channel_index, count, time};
}

std::vector<PauliOp> corrections_for(BellKind kind, int signal2_qubit) {
    switch (kind) {
    case BellKind::PsiMinus: return {};
    case BellKind::PsiPlus:  return {{Pauli::Z, signal2_qubit}};
    case BellKind::PhiMinus: return {{Pauli::X, signal2_qubit}};
    case BellKind::PhiPlus:
        return {{Pauli::X, signal2_qubit}, {Pauli::Z, signal2_qubit}};
    }
    return {};
}

std::optional<HeraldResult> herald(std::span<const Click> clicks,
                                   const DetectorConfig& cfg, int signal2_qubit) {
    auto result = [&](BellKind kind, int channel, double time) {
        return HeraldResult{kind, channel, corrections_for(kind, signal2_qubit), time};
    };

    if (clicks.size() == 1) {
        const Click& c = clicks[0];
        // Double occupancy on one detector is only resolvable with PNR.
        if (cfg.detector_type == DetectorType::PNR && c.photon_count == 2) {
            BellKind kind =
                c.port == BsPort::IPlus ? BellKind::PhiPlus : BellKind::PhiMinus;
            return result(kind, c.channel_index, c.time_ps);
        }
        return std::nullopt;
    }

    if (clicks.size() == 2) {
        const Click& a = clicks[0];
        const Click& b = clicks[1];
        if (a.photon_count != 1 || b.photon_count != 1) return std::nullopt;
        if (a.channel_index != b.channel_index) return std::nullopt; // which-path info
        if (a.arm == b.arm) return std::nullopt;
        const double t = std::max(a.time_ps, b.time_ps);
        if (a.port == b.port) return result(BellKind::PsiPlus, a.channel_index, t);
        return result(BellKind::PsiMinus, a.channel_index, t);
    }

    return std::nullopt;
}

} // namespace zalm
