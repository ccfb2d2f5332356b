#pragma once

#include <optional>
#include <utility>

#include "zalm/rng.hpp"

namespace zalm {

// Speed of light: nm*THz, also km/s.
inline constexpr double kSpeedOfLight = 299792.458;

enum class Pol { H, V, Entangled };

// Classical mode labels of one photon. The quantum polarization state
// lives in the trial DensityMatrix, addressed by qubit_id.
struct FlyingPhoton {
    int photon_id = 0;
    int qubit_id = 0;
    double center_freq_THz = 0.0;
    double spectral_fwhm_GHz = 0.0;
    double arrival_time_ps = 0.0;
    Pol nominal_pol = Pol::Entangled;
    bool alive = true;
};

enum class SeparationMode { DICHROIC, PBS };

struct SpdcConfig {
    double pump_wavelength_nm = 775.0;
    double degeneracy_bandwidth_fwhm_nm = 5.0;
    double temporal_jitter_stdev_ps = 20.0;
    double emission_success_probability = 0.95;
    double photon_fwhm_GHz = 30.0;
    SeparationMode separation_mode = SeparationMode::DICHROIC;
    double dm_insertion_loss_db = 0.3;
    double dm_crosstalk_probability = 0.01;
    // Test hook: pin both photons to the exact degenerate frequency and
    // suppress jitter, guaranteeing unit HOM visibility downstream.
    bool force_degenerate = false;
};

struct PhotonPair {
    FlyingPhoton signal;
    FlyingPhoton idler;
    int source_index = 0;
    // The two qubits entangled as a PsiPlus pair in the trial state.
    std::pair<int, int> joint_state_qubits{0, 1};
};

// fwhm / (2 sqrt(2 ln 2)); throws on non-positive input.
double fwhm_to_sigma(double fwhm);

double pump_frequency_THz(const SpdcConfig& cfg);
double degenerate_frequency_THz(const SpdcConfig& cfg);

// Gaussian stdev (THz) of the down-converted center-frequency offset,
// from the nm-FWHM degeneracy bandwidth evaluated at 2*lambda_pump.
double degeneracy_sigma_THz(const SpdcConfig& cfg);

// (nu_signal, nu_idler) = (nu0 + delta, nu0 - delta); energy conservation
// nu_s + nu_i = nu_pump holds exactly.
std::pair<double, double> sample_pair_frequencies(const SpdcConfig& cfg, Rng& rng);

// Triggered emission. With probability emission_success_probability
// produces a pair whose two qubits (qubit_base, qubit_base+1) are to be
// prepared as PsiPlus (type-II: orthogonally polarised photons); empty
// means vacuum. Nominal polarizations are definite only in PBS separation
// mode, where the two sources are configured inversely.
std::optional<PhotonPair> emit(const SpdcConfig& cfg, int source_index,
                               int qubit_base, Rng& rng);

// Resolves which photon takes the signal path and which the idler path.
// PBS mode: deterministic, by polarization label. DICHROIC mode: longer
// wavelength -> signal; roles swapped with dm_crosstalk_probability; each
// photon survives the mirror with probability 10^(-dm_insertion_loss_db/10).
std::pair<FlyingPhoton, FlyingPhoton> separate(const PhotonPair& pair,
                                               const SpdcConfig& cfg, Rng& rng);

} // namespace zalm
