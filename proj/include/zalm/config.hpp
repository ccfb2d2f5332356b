#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zalm/detection_heralding.hpp"
#include "zalm/feed_forward.hpp"
#include "zalm/interferometer.hpp"
#include "zalm/photon_source.hpp"
#include "zalm/spectral_filtering.hpp"

namespace zalm {

inline constexpr const char* kVersion = "0.1.0";

enum class SimMode { IDEAL, REALISTIC };

struct SimConfig {
    SimMode sim_mode = SimMode::REALISTIC;
    SpdcConfig spdc;
    BsConfig bs;
    PbsConfig pbs;
    DwdmConfig dwdm;
    DetectorConfig detector;
    NoiseConfig noise;
    FiberConfig fiber;
    long n_trials = 10000;
    std::uint64_t seed = 1;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// Assigns a single flat dotted key (e.g. "spdc.photon_fwhm_GHz"). Uppercase
// parameter names (e.g. "PHOTON_FWHM_GHZ") are accepted as aliases.
// Throws ConfigError on unknown key, type mismatch, or range violation.
void set_config_value(SimConfig& cfg, const std::string& key, const std::string& value);

// Range validation over the whole config; throws ConfigError naming the
// offending key.
void validate_config(const SimConfig& cfg);

// defaults <- file <- overrides, in that precedence, then validated.
SimConfig load_config(const std::optional<std::string>& file_path,
                      const std::vector<std::pair<std::string, std::string>>& overrides);

// Parses a "key = value" document ('#' comments, blank lines allowed).
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path);

// Every field as (dotted key, value), in a fixed order. Reloading the
// result reproduces the config field-by-field.
std::vector<std::pair<std::string, std::string>> serialize_config(const SimConfig& cfg);

// Uppercase legacy parameter name -> dotted key.
const std::map<std::string, std::string>& param_aliases();

// FNV-1a over the serialized config; ties results files to the exact
// effective configuration.
std::uint64_t config_hash(const SimConfig& cfg);

const char* to_string(SimMode m);
const char* to_string(SeparationMode m);
const char* to_string(FilterModel m);
const char* to_string(DetectorType t);

} // namespace zalm
