#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <vector>

#include "zalm/photon_source.hpp"

namespace zalm {

enum class Band { C, S, L };
enum class FilterModel { GAUSSIAN, BRICKWALL };

struct DwdmConfig {
    std::set<Band> enabled_bands{Band::C, Band::S, Band::L};
    double grid_granularity_GHz = 100.0;
    double filter_passband_fraction = 0.8;
    double effective_filter_bandwidth_GHz = 80.0;
    double insertion_loss_db = 0.50;
    FilterModel filter_model = FilterModel::GAUSSIAN;
};

struct Channel {
    int index = 0;
    double center_freq_THz = 0.0;
    double passband_low_THz = 0.0;
    double passband_high_THz = 0.0;
    Band band = Band::C;
};

struct DwdmGrid {
    std::vector<Channel> channels; // sorted by center frequency
    double grid_granularity_GHz = 100.0;
};

// Telecom band edges (THz). The grid tiles each enabled band with centers
// on the ITU anchor 193.1 THz extended at the configured granularity.
struct BandRange {
    Band band;
    double low_THz;
    double high_THz;
};
const std::vector<BandRange>& band_ranges();

inline constexpr double kItuAnchorTHz = 193.1;

DwdmGrid build_grid(const DwdmConfig& cfg);

// Channel whose center is nearest nu and within half a grid spacing;
// ties break to the lower-index channel. Empty when nu falls outside all
// enabled bands.
std::optional<int> assign_channel(const DwdmGrid& grid, double nu_THz);

// T = integral of the photon's unit-normalized Gaussian spectral density
// against the filter transmission, times the insertion-loss survival
// 10^(-IL/10). Fixed-step quadrature, tolerance 1e-6.
double transmission_probability(const FlyingPhoton& photon, const Channel& channel,
                                const DwdmConfig& cfg);

// CSV dump: index, band, center_THz, passband_low_THz, passband_high_THz
void write_grid_csv(const DwdmGrid& grid, std::ostream& os);

const char* to_string(Band b);

} // namespace zalm
