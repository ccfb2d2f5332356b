#include "zalm/spectral_filtering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace zalm {

const std::vector<BandRange>& band_ranges() {
    static const std::vector<BandRange> ranges = {
        {Band::L, 184.40, 191.30},
        {Band::C, 191.35, 196.10},
        {Band::S, 196.20, 205.30},
    };
    return ranges;
}

DwdmGrid build_grid(const DwdmConfig& cfg) {
    if (cfg.enabled_bands.empty())
        throw std::invalid_argument("build_grid: no enabled bands");
    const double g = cfg.grid_granularity_GHz * 1e-3; // THz

    DwdmGrid grid;
    grid.grid_granularity_GHz = cfg.grid_granularity_GHz;
    const double half_pass = 0.5 * cfg.filter_passband_fraction * g;

    for (const BandRange& br : band_ranges()) {
        if (!cfg.enabled_bands.count(br.band)) continue;
        // Centers on the anchor lattice falling inside the band edges.
        const long k_min = static_cast<long>(std::ceil((br.low_THz - kItuAnchorTHz) / g - 1e-9));
        const long k_max = static_cast<long>(std::floor((br.high_THz - kItuAnchorTHz) / g + 1e-9));
        for (long k = k_min; k <= k_max; ++k) {
            const double c = kItuAnchorTHz + static_cast<double>(k) * g;
            grid.channels.push_back({0, c, c - half_pass, c + half_pass, br.band});
        }
    }
    std::sort(grid.channels.begin(), grid.channels.end(),
              [](const Channel& a, const Channel& b) {
                  return a.center_freq_THz < b.center_freq_THz;
              });
    for (std::size_t i = 0; i < grid.channels.size(); ++i)
        grid.channels[i].index = static_cast<int>(i);
    return grid;
}

std::optional<int> assign_channel(const DwdmGrid& grid, double nu_THz) {
    if (grid.channels.empty()) throw std::invalid_argument("assign_channel: empty grid");
    const double half = 0.5 * grid.grid_granularity_GHz * 1e-3;

    auto it = std::lower_bound(grid.channels.begin(), grid.channels.end(), nu_THz,
                               [](const Channel& ch, double v) {
                                   return ch.center_freq_THz < v;
                               });
    std::optional<int> best;
    double best_dist = half + 1e-12;
    // Lower-index candidate first so exact midpoint ties keep it.
    if (it != grid.channels.begin()) {
        auto lo = std::prev(it);
        double d = std::abs(nu_THz - lo->center_freq_THz);
        if (d <= half && d < best_dist) { best = lo->index; best_dist = d; }
    }
    if (it != grid.channels.end()) {
        double d = std::abs(nu_THz - it->center_freq_THz);
        if (d <= half && d < best_dist) { best = it->index; best_dist = d; }
    }
    return best;
}

double transmission_probability(const FlyingPhoton& photon, const Channel& channel,
                                const DwdmConfig& cfg) {
    if (!photon.alive) throw std::invalid_argument("transmission_probability: dead photon");

    const double sigma_s = fwhm_to_sigma(photon.spectral_fwhm_GHz * 1e-3); // THz
    const double mu = photon.center_freq_THz;

    double lo = mu - 8.0 * sigma_s;
    double hi = mu + 8.0 * sigma_s;
    if (cfg.filter_model == FilterModel::BRICKWALL) {
        lo = std::max(lo, channel.passband_low_THz);
        hi = std::min(hi, channel.passband_high_THz);
        if (lo >= hi) return 0.0;
    }

    const double sigma_f = fwhm_to_sigma(cfg.effective_filter_bandwidth_GHz * 1e-3);
    auto integrand = [&](double nu) {
        const double z = (nu - mu) / sigma_s;
        double f = std::exp(-0.5 * z * z) /
                   (sigma_s * std::sqrt(2.0 * std::numbers::pi));
        if (cfg.filter_model == FilterModel::GAUSSIAN) {
            const double d = (nu - channel.center_freq_THz) / sigma_f;
            f *= std::exp(-0.5 * d * d);
        }
        return f;
    };

    // Composite Simpson, 2048 panels.
    const int n = 2048;
    const double h = (hi - lo) / n;
    double sum = integrand(lo) + integrand(hi);
    for (int i = 1; i < n; ++i)
        sum += integrand(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    double t = sum * h / 3.0;

    t *= std::pow(10.0, -cfg.insertion_loss_db / 10.0);
    return std::clamp(t, 0.0, 1.0);
}

void write_grid_csv(const DwdmGrid& grid, std::ostream& os) {
    os << "index,band,center_THz,passband_low_THz,passband_high_THz\n";
    char buf[160];
    for (const Channel& ch : grid.channels) {
        std::snprintf(buf, sizeof(buf), "%d,%s,%.6f,%.6f,%.6f\n", ch.index,
                      to_string(ch.band), ch.center_freq_THz, ch.passband_low_THz,
                      ch.passband_high_THz);
        os << buf;
    }
}

const char* to_string(Band b) {
    switch (b) {
    case Band::C: return "C";
    case Band::S: return "S";
    case Band::L: return "L";
    }
    return "?";
}

} // namespace zalm
