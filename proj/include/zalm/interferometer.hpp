#pragma once

#include <array>
#include <utility>

#include "zalm/photon_source.hpp"
#include "zalm/quantum_core.hpp"
#include "zalm/rng.hpp"

namespace zalm {

struct BsConfig {
    double hom_threshold = 0.99;
    double insertion_loss_db = 0.20;
};

struct PbsConfig {
    double extinction_ratio = 0.001;
    double insertion_loss_db = 0.20;
};

enum class BsPort { IPlus, IMinus };
enum class PbsArm { H, V };

struct BsOutcome {
    // Output port per input photon index {0, 1}.
    std::array<BsPort, 2> port_of{BsPort::IPlus, BsPort::IPlus};
    bool bunched = false;
    double visibility = 0.0;
    // True when the reflected (I-) port, which adds the 180 degree phase
    // shift, is involved.
    bool phase_flag = false;
};

// Two-photon indistinguishability across spectral, temporal, and
// polarization degrees of freedom:
//   V = P * exp(-(2 pi dnu)^2 / (4 sigma_w^2)) * exp(-sigma_w^2 dt^2)
// the squared magnitude of the Gaussian wave-packet mode overlap.
// sigma_w is the common angular spectral width (rad/ps) from the mean
// photon FWHM; P = 0 for orthogonal definite polarizations, else 1.
// Throws if either photon is dead.
double hom_visibility(const FlyingPhoton& p1, const FlyingPhoton& p2);

// 50:50 beam splitter. V >= threshold forces bunching at a uniformly
// random port; otherwise 50:50 bunched/anti-bunched. A lone alive photon
// picks a uniformly random port. Each photon independently survives the
// insertion loss (alive flag cleared in place).
BsOutcome beamsplit(FlyingPhoton& idler1, FlyingPhoton& idler2,
                    const BsConfig& cfg, Rng& rng);

// Delivered-state rewrite conditioned on the heralded kind: the signal
// pair becomes the Table-of-Bell-states density matrix for `heralded`
// with off-diagonal coherence damped by outcome.visibility, so
// fidelity = (1 + V)/2 when no other noise applies. The idler qubits of
// `trial_state` are projected out.
DensityMatrix apply_bs_state_update(const DensityMatrix& trial_state,
                                    std::pair<int, int> signal_qubits,
                                    const BsOutcome& outcome, BellKind heralded);

// Routes by polarization; an Entangled-pol photon samples a uniformly
// random measured polarization (the idler marginal is maximally mixed).
// With probability extinction_ratio the wrong arm is chosen; survival via
// insertion loss (alive flag cleared in place).
PbsArm pbs_route(FlyingPhoton& photon, const PbsConfig& cfg, Rng& rng);

} // namespace zalm
