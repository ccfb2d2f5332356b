#include "zalm/photon_source.hpp"

#include <cmath>
#include <stdexcept>

namespace zalm {

double fwhm_to_sigma(double fwhm) {
    if (fwhm <= 0.0) throw std::invalid_argument("fwhm_to_sigma: non-positive input");
    return fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

double pump_frequency_THz(const SpdcConfig& cfg) {
    return kSpeedOfLight / cfg.pump_wavelength_nm;
}

double degenerate_frequency_THz(const SpdcConfig& cfg) {
    return 0.5 * pump_frequency_THz(cfg);
}

double degeneracy_sigma_THz(const SpdcConfig& cfg) {
    const double lambda = 2.0 * cfg.pump_wavelength_nm; // down-converted band
    const double fwhm_THz =
        kSpeedOfLight * cfg.degeneracy_bandwidth_fwhm_nm / (lambda * lambda);
    return fwhm_to_sigma(fwhm_THz);
}

std::pair<double, double> sample_pair_frequencies(const SpdcConfig& cfg, Rng& rng) {
    const double nu0 = degenerate_frequency_THz(cfg);
    const double delta =
        cfg.force_degenerate ? 0.0 : rng.gaussian(0.0, degeneracy_sigma_THz(cfg));
    return {nu0 + delta, nu0 - delta};
}

std::optional<PhotonPair> emit(const SpdcConfig& cfg, int source_index,
                               int qubit_base, Rng& rng) {
    if (!rng.bernoulli(cfg.emission_success_probability)) return std::nullopt; // vacuum

    auto [nu_s, nu_i] = sample_pair_frequencies(cfg, rng);
    const double jitter = cfg.force_degenerate ? 0.0 : cfg.temporal_jitter_stdev_ps;

    Pol pol_s = Pol::Entangled, pol_i = Pol::Entangled;
    if (cfg.separation_mode == SeparationMode::PBS) {
        // The two sources are configured inversely so the idlers entering
        // the interferometer carry orthogonal nominal polarizations.
        pol_s = source_index == 0 ? Pol::H : Pol::V;
        pol_i = source_index == 0 ? Pol::V : Pol::H;
    }

    PhotonPair pair;
    pair.source_index = source_index;
    pair.joint_state_qubits = {qubit_base, qubit_base + 1};
    pair.signal = {source_index * 2, qubit_base, nu_s, cfg.photon_fwhm_GHz,
                   rng.gaussian(0.0, jitter), pol_s, true};
    pair.idler = {source_index * 2 + 1, qubit_base + 1, nu_i, cfg.photon_fwhm_GHz,
                  rng.gaussian(0.0, jitter), pol_i, true};
    return pair;
}

std::pair<FlyingPhoton, FlyingPhoton> separate(const PhotonPair& pair,
                                               const SpdcConfig& cfg, Rng& rng) {
    FlyingPhoton a = pair.signal;
    FlyingPhoton b = pair.idler;
    if (!a.alive || !b.alive)
        throw std::invalid_argument("separate: pair not alive");

    if (cfg.separation_mode == SeparationMode::PBS) {
        // Roles were fixed at emission by the polarization labels.
        return {a, b};
    }

    // Dichroic mirror: longer wavelength (lower frequency) takes the
    // signal path.
    FlyingPhoton signal = a.center_freq_THz <= b.center_freq_THz ? a : b;
    FlyingPhoton idler = a.center_freq_THz <= b.center_freq_THz ? b : a;
    if (rng.bernoulli(cfg.dm_crosstalk_probability)) std::swap(signal, idler);

    const double survive = std::pow(10.0, -cfg.dm_insertion_loss_db / 10.0);
    if (!rng.bernoulli(survive)) signal.alive = false;
    if (!rng.bernoulli(survive)) idler.alive = false;
    return {signal, idler};
}

} // namespace zalm
