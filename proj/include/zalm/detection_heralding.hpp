#pragma once

#include <optional>
#include <span>
#include <vector>

#include "zalm/interferometer.hpp"
#include "zalm/photon_source.hpp"
#include "zalm/quantum_core.hpp"
#include "zalm/rng.hpp"

namespace zalm {

enum class DetectorType { STANDARD, PNR };

struct DetectorConfig {
    double efficiency = 0.98;
    DetectorType detector_type = DetectorType::STANDARD;
};

struct Click {
    BsPort port = BsPort::IPlus;
    PbsArm arm = PbsArm::H;
    int channel_index = 0;
    int photon_count = 1; // always 1 for STANDARD
    double time_ps = 0.0;
};

struct HeraldResult {
    BellKind bell = BellKind::PsiMinus;
    int channel_index = 0;
    // Pauli list that maps bell_state(bell) to PsiMinus, applied in order.
    std::vector<PauliOp> corrections;
    double herald_time_ps = 0.0;
};

// One detector (port, arm, channel). Each photon registers independently
// with probability efficiency; STANDARD collapses any registrations to a
// single count, PNR reports the number registered. Empty when nothing
// registers.
std::optional<Click> detect(std::span<const FlyingPhoton> photons_at_arm,
                            BsPort port, PbsArm arm, int channel_index,
                            const DetectorConfig& cfg, Rng& rng);

// Fixed Table-of-Bell-states group action toward the singlet, targeting
// the second signal qubit.
std::vector<PauliOp> corrections_for(BellKind kind, int signal2_qubit);

// Maps a trial's coincidence click pattern to a Bell identification:
//   - PNR double click: PhiPlus on I+, PhiMinus on I-.
//   - two clicks, same port, different arms, same channel: PsiPlus.
//   - two clicks, different ports, one H one V, same channel: PsiMinus.
//   - anything else: no herald.
// Pure function of the click multiset (order-independent).
std::optional<HeraldResult> herald(std::span<const Click> clicks,
                                   const DetectorConfig& cfg, int signal2_qubit);

} // namespace zalm
