#include "zalm/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zalm {

double hom_visibility(const FlyingPhoton& p1, const FlyingPhoton& p2) {
    if (!p1.alive || !p2.alive)
        throw std::invalid_argument("hom_visibility: dead photon");

    const bool orthogonal = (p1.nominal_pol == Pol::H && p2.nominal_pol == Pol::V) ||
                            (p1.nominal_pol == Pol::V && p2.nominal_pol == Pol::H);
    if (orthogonal) return 0.0;

    const double fwhm_GHz = 0.5 * (p1.spectral_fwhm_GHz + p2.spectral_fwhm_GHz);
    const double sigma_w =
        fwhm_to_sigma(2.0 * std::numbers::pi * fwhm_GHz * 1e-3); // rad/ps
    const double dw =
        2.0 * std::numbers::pi * (p1.center_freq_THz - p2.center_freq_THz);
    const double dt = p1.arrival_time_ps - p2.arrival_time_ps;

    const double v = std::exp(-dw * dw / (4.0 * sigma_w * sigma_w)) *
                     std::exp(-sigma_w * sigma_w * dt * dt);
    return std::clamp(v, 0.0, 1.0);
}

BsOutcome beamsplit(FlyingPhoton& idler1, FlyingPhoton& idler2,
                    const BsConfig& cfg, Rng& rng) {
    if (!idler1.alive && !idler2.alive)
        throw std::invalid_argument("beamsplit: no alive input photon");

    BsOutcome out;
    auto random_port = [&rng] {
        return rng.bernoulli(0.5) ? BsPort::IPlus : BsPort::IMinus;
    };

    if (idler1.alive && idler2.alive) {
        out.visibility = hom_visibility(idler1, idler2);
        if (out.visibility >= cfg.hom_threshold) {
            out.bunched = true;
            BsPort p = random_port();
            out.port_of = {p, p};
        } else if (rng.bernoulli(0.5)) {
            out.bunched = true;
            BsPort p = random_port();
            out.port_of = {p, p};
        } else {
            out.bunched = false;
            BsPort p = random_port();
            out.port_of = {p, p == BsPort::IPlus ? BsPort::IMinus : BsPort::IPlus};
        }
    } else {
        // Lone photon: classical 50:50 routing.
        BsPort p = random_port();
        out.port_of = {p, p};
        out.bunched = false;
        out.visibility = 0.0;
    }

    const double survive = std::pow(10.0, -cfg.insertion_loss_db / 10.0);
    if (idler1.alive && !rng.bernoulli(survive)) idler1.alive = false;
    if (idler2.alive && !rng.bernoulli(survive)) idler2.alive = false;

    out.phase_flag = (idler1.alive && out.port_of[0] == BsPort::IMinus) ||
                     (idler2.alive && out.port_of[1] == BsPort::IMinus);
    return out;
}

DensityMatrix apply_bs_state_update(const DensityMatrix& trial_state,
                                    std::pair<int, int> signal_qubits,
                                    const BsOutcome& outcome, BellKind heralded) {
    if (!trial_state.has_qubit(signal_qubits.first) ||
        !trial_state.has_qubit(signal_qubits.second))
        throw std::invalid_argument("apply_bs_state_update: unknown signal qubit");

    const double v = std::clamp(outcome.visibility, 0.0, 1.0);
    Vec b = bell_vector(heralded);
    Mat pure = b * b.adjoint();
    Mat damped = v * pure + (1.0 - v) * Mat(pure.diagonal().asDiagonal());
    return DensityMatrix(std::move(damped),
                         {signal_qubits.first, signal_qubits.second});
}

PbsArm pbs_route(FlyingPhoton& photon, const PbsConfig& cfg, Rng& rng) {
    if (!photon.alive) throw std::invalid_argument("pbs_route: dead photon");

    Pol measured = photon.nominal_pol;
    if (measured == Pol::Entangled)
        measured = rng.bernoulli(0.5) ? Pol::H : Pol::V;

    PbsArm arm = measured == Pol::H ? PbsArm::H : PbsArm::V;
    if (rng.bernoulli(cfg.extinction_ratio))
        arm = arm == PbsArm::H ? PbsArm::V : PbsArm::H;

    if (!rng.bernoulli(std::pow(10.0, -cfg.insertion_loss_db / 10.0)))
        photon.alive = false;
    return arm;
}

} // namespace zalm
