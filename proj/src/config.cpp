#include "zalm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace zalm {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + v + "'");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected an integer, got '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        std::uint64_t d = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected an unsigned integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(key, "expected true/false, got '" + v + "'");
}

std::string fmt_double(double d) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    return buf;
}

std::set<Band> parse_bands(const std::string& key, const std::string& v) {
    std::set<Band> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok == "C") out.insert(Band::C);
        else if (tok == "S") out.insert(Band::S);
        else if (tok == "L") out.insert(Band::L);
        else throw ConfigError(key, "unknown band '" + tok + "'");
    }
    if (out.empty()) throw ConfigError(key, "at least one band required");
    return out;
}

std::string fmt_bands(const std::set<Band>& bands) {
    std::string out;
    for (Band b : bands) {
        if (!out.empty()) out += ",";
        out += to_string(b);
    }
    return out;
}

struct Field {
    std::function<void(SimConfig&, const std::string& key, const std::string&)> set;
    std::function<std::string(const SimConfig&)> get;
};

const std::vector<std::pair<std::string, Field>>& fields() {
    static const std::vector<std::pair<std::string, Field>> table = {
        {"sim_mode",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              if (v == "IDEAL") c.sim_mode = SimMode::IDEAL;
              else if (v == "REALISTIC") c.sim_mode = SimMode::REALISTIC;
              else throw ConfigError(k, "expected IDEAL or REALISTIC");
          },
          [](const SimConfig& c) { return std::string(to_string(c.sim_mode)); }}},
        {"spdc.pump_wavelength_nm",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.spdc.pump_wavelength_nm = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.spdc.pump_wavelength_nm); }}},
        {"spdc.degeneracy_bandwidth_fwhm_nm",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.spdc.degeneracy_bandwidth_fwhm_nm = parse_double(k, v);
          },
          [](const SimConfig& c) {
              return fmt_double(c.spdc.degeneracy_bandwidth_fwhm_nm);
          }}},
        {"spdc.temporal_jitter_stdev_ps",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.spdc.temporal_jitter_stdev_ps = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.spdc.temporal_jitter_stdev_ps); }}},
        {"spdc.emission_success_probability",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.spdc.emission_success_probability = parse_double(k, v);
          },
          [](const SimConfig& c) {
              return fmt_double(c.spdc.emission_success_probability);
          }}},
        {"spdc.photon_fwhm_GHz",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.spdc.photon_fwhm_GHz = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.spdc.photon_fwhm_GHz); }}},
        {"spdc.separation_mode",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              if (v == "DICHROIC") c.spdc.separation_mode = SeparationMode::DICHROIC;
              else if (v == "PBS") c.spdc.separation_mode = SeparationMode::PBS;
              else throw ConfigError(k, "expected DICHROIC or PBS");
          },
          [](const SimConfig& c) {
              return std::string(to_string(c.spdc.separation_mode));
          }}},
        {"spdc.dm_insertion_loss_db",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.spdc.dm_insertion_loss_db = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.spdc.dm_insertion_loss_db); }}},
        {"spdc.dm_crosstalk_probability",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.spdc.dm_crosstalk_probability = parse_double(k, v);
          },
          [](const SimConfig& c) {
              return fmt_double(c.spdc.dm_crosstalk_probability);
          }}},
        {"spdc.force_degenerate",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.spdc.force_degenerate = parse_bool(k, v);
          },
          [](const SimConfig& c) {
              return std::string(c.spdc.force_degenerate ? "true" : "false");
          }}},
        {"bs.hom_threshold",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.bs.hom_threshold = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.bs.hom_threshold); }}},
        {"bs.insertion_loss_db",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.bs.insertion_loss_db = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.bs.insertion_loss_db); }}},
        {"pbs.extinction_ratio",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.pbs.extinction_ratio = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.pbs.extinction_ratio); }}},
        {"pbs.insertion_loss_db",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.pbs.insertion_loss_db = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.pbs.insertion_loss_db); }}},
        {"dwdm.enabled_bands",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.dwdm.enabled_bands = parse_bands(k, v);
          },
          [](const SimConfig& c) { return fmt_bands(c.dwdm.enabled_bands); }}},
        {"dwdm.grid_granularity_GHz",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.dwdm.grid_granularity_GHz = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.dwdm.grid_granularity_GHz); }}},
        {"dwdm.filter_passband_fraction",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.dwdm.filter_passband_fraction = parse_double(k, v);
          },
          [](const SimConfig& c) {
              return fmt_double(c.dwdm.filter_passband_fraction);
          }}},
        {"dwdm.effective_filter_bandwidth_GHz",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.dwdm.effective_filter_bandwidth_GHz = parse_double(k, v);
          },
          [](const SimConfig& c) {
              return fmt_double(c.dwdm.effective_filter_bandwidth_GHz);
          }}},
        {"dwdm.insertion_loss_db",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.dwdm.insertion_loss_db = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.dwdm.insertion_loss_db); }}},
        {"dwdm.filter_model",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              if (v == "GAUSSIAN") c.dwdm.filter_model = FilterModel::GAUSSIAN;
              else if (v == "BRICKWALL") c.dwdm.filter_model = FilterModel::BRICKWALL;
              else throw ConfigError(k, "expected GAUSSIAN or BRICKWALL");
          },
          [](const SimConfig& c) {
              return std::string(to_string(c.dwdm.filter_model));
          }}},
        {"detector.efficiency",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.detector.efficiency = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.detector.efficiency); }}},
        {"detector.detector_type",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              if (v == "STANDARD") c.detector.detector_type = DetectorType::STANDARD;
              else if (v == "PNR") c.detector.detector_type = DetectorType::PNR;
              else throw ConfigError(k, "expected STANDARD or PNR");
          },
          [](const SimConfig& c) {
              return std::string(to_string(c.detector.detector_type));
          }}},
        {"noise.gate_error_prob_single",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.noise.gate_error_prob_single = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.noise.gate_error_prob_single); }}},
        {"noise.gate_error_prob_two",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.noise.gate_error_prob_two = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.noise.gate_error_prob_two); }}},
        {"noise.measurement_dephase_prob",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.noise.measurement_dephase_prob = parse_double(k, v);
          },
          [](const SimConfig& c) {
              return fmt_double(c.noise.measurement_dephase_prob);
          }}},
        {"noise.memory_depolar_rate_hz",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.noise.memory_depolar_rate_hz = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.noise.memory_depolar_rate_hz); }}},
        {"noise.storage_delay_ns",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.noise.storage_delay_ns = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.noise.storage_delay_ns); }}},
        {"fiber.internode_length_km",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.fiber.internode_length_km = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.fiber.internode_length_km); }}},
        {"fiber.attenuation_db_per_km",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.fiber.attenuation_db_per_km = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.fiber.attenuation_db_per_km); }}},
        {"fiber.refractive_index",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.fiber.refractive_index = parse_double(k, v);
          },
          [](const SimConfig& c) { return fmt_double(c.fiber.refractive_index); }}},
        {"n_trials",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.n_trials = parse_long(k, v);
          },
          [](const SimConfig& c) { return std::to_string(c.n_trials); }}},
        {"seed",
         {[](SimConfig& c, const std::string& k, const std::string& v) {
              c.seed = parse_u64(k, v);
          },
          [](const SimConfig& c) { return std::to_string(c.seed); }}},
    };
    return table;
}

} // namespace

const std::map<std::string, std::string>& param_aliases() {
    static const std::map<std::string, std::string> aliases = {
        {"SIM_MODE", "sim_mode"},
        {"SPDC_PUMP_WAVELENGTH_NM", "spdc.pump_wavelength_nm"},
        {"SPDC_DEGENERACY_BANDWIDTH_FWHM_NM", "spdc.degeneracy_bandwidth_fwhm_nm"},
        {"TEMPORAL_JITTER_STDEV_PS", "spdc.temporal_jitter_stdev_ps"},
        {"EMISSION_SUCCESS_PROBABILITY", "spdc.emission_success_probability"},
        {"PHOTON_FWHM_GHZ", "spdc.photon_fwhm_GHz"},
        {"SPDC_MODE", "spdc.separation_mode"},
        {"DM_INSERTION_LOSS_DB", "spdc.dm_insertion_loss_db"},
        {"DM_CROSSTALK_PROBABILITY", "spdc.dm_crosstalk_probability"},
        {"BEAMSPLITTER_HOM_THRESHOLD", "bs.hom_threshold"},
        {"BEAMSPLITTER_INSERTION_LOSS_DB", "bs.insertion_loss_db"},
        {"PBS_EXTINCTION_RATIO", "pbs.extinction_ratio"},
        {"PBS_INSERTION_LOSS_DB", "pbs.insertion_loss_db"},
        {"ENABLED_BAND", "dwdm.enabled_bands"},
        {"GRID_GRANULARITY_GHZ", "dwdm.grid_granularity_GHz"},
        {"FILTER_PASSBAND_FRACTION", "dwdm.filter_passband_fraction"},
        {"EFFECTIVE_FILTER_BANDWIDTH_GHZ", "dwdm.effective_filter_bandwidth_GHz"},
        {"DWDM_FILTER_INSERTION_LOSS_DB", "dwdm.insertion_loss_db"},
        {"FILTER_MODEL", "dwdm.filter_model"},
        {"DETECTOR_EFFICIENCY", "detector.efficiency"},
        {"DETECTOR_TYPE", "detector.detector_type"},
        {"GATE_ERROR_PROB_SINGLE_QUBIT", "noise.gate_error_prob_single"},
        {"GATE_ERROR_PROB_TWO_QUBIT", "noise.gate_error_prob_two"},
        {"MEASUREMENT_DEPHASE_PROB", "noise.measurement_dephase_prob"},
        {"MEMORY_DEPOLAR_RATE", "noise.memory_depolar_rate_hz"},
        {"INTERNODE_LENGTH", "fiber.internode_length_km"},
    };
    return aliases;
}

void set_config_value(SimConfig& cfg, const std::string& key, const std::string& value) {
    std::string k = key;
    if (auto it = param_aliases().find(k); it != param_aliases().end())
        k = it->second;
    for (const auto& [name, field] : fields()) {
        if (name == k) {
            field.set(cfg, k, trim(value));
            return;
        }
    }
    throw ConfigError(key, "unknown configuration key");
}

namespace {

void check_prob(const std::string& key, double v) {
    if (v < 0.0 || v > 1.0)
        throw ConfigError(key, "must be in [0, 1], got " + fmt_double(v));
}

void check_positive(const std::string& key, double v) {
    if (v <= 0.0) throw ConfigError(key, "must be > 0, got " + fmt_double(v));
}

void check_nonneg(const std::string& key, double v) {
    if (v < 0.0) throw ConfigError(key, "must be >= 0, got " + fmt_double(v));
}

} // namespace

void validate_config(const SimConfig& cfg) {
    check_positive("spdc.pump_wavelength_nm", cfg.spdc.pump_wavelength_nm);
    check_positive("spdc.degeneracy_bandwidth_fwhm_nm",
                   cfg.spdc.degeneracy_bandwidth_fwhm_nm);
    check_nonneg("spdc.temporal_jitter_stdev_ps", cfg.spdc.temporal_jitter_stdev_ps);
    check_prob("spdc.emission_success_probability",
               cfg.spdc.emission_success_probability);
    check_positive("spdc.photon_fwhm_GHz", cfg.spdc.photon_fwhm_GHz);
    check_nonneg("spdc.dm_insertion_loss_db", cfg.spdc.dm_insertion_loss_db);
    check_prob("spdc.dm_crosstalk_probability", cfg.spdc.dm_crosstalk_probability);
    check_prob("bs.hom_threshold", cfg.bs.hom_threshold);
    check_nonneg("bs.insertion_loss_db", cfg.bs.insertion_loss_db);
    check_prob("pbs.extinction_ratio", cfg.pbs.extinction_ratio);
    check_nonneg("pbs.insertion_loss_db", cfg.pbs.insertion_loss_db);
    if (cfg.dwdm.enabled_bands.empty())
        throw ConfigError("dwdm.enabled_bands", "at least one band required");
    check_positive("dwdm.grid_granularity_GHz", cfg.dwdm.grid_granularity_GHz);
    if (cfg.dwdm.filter_passband_fraction <= 0.0 ||
        cfg.dwdm.filter_passband_fraction > 1.0)
        throw ConfigError("dwdm.filter_passband_fraction", "must be in (0, 1]");
    check_positive("dwdm.effective_filter_bandwidth_GHz",
                   cfg.dwdm.effective_filter_bandwidth_GHz);
    check_nonneg("dwdm.insertion_loss_db", cfg.dwdm.insertion_loss_db);
    check_prob("detector.efficiency", cfg.detector.efficiency);
    check_prob("noise.gate_error_prob_single", cfg.noise.gate_error_prob_single);
    check_prob("noise.gate_error_prob_two", cfg.noise.gate_error_prob_two);
    check_prob("noise.measurement_dephase_prob", cfg.noise.measurement_dephase_prob);
    check_nonneg("noise.memory_depolar_rate_hz", cfg.noise.memory_depolar_rate_hz);
    check_nonneg("noise.storage_delay_ns", cfg.noise.storage_delay_ns);
    check_nonneg("fiber.internode_length_km", cfg.fiber.internode_length_km);
    check_nonneg("fiber.attenuation_db_per_km", cfg.fiber.attenuation_db_per_km);
    check_positive("fiber.refractive_index", cfg.fiber.refractive_index);
    if (cfg.n_trials < 1) throw ConfigError("n_trials", "must be >= 1");
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

SimConfig load_config(const std::optional<std::string>& file_path,
                      const std::vector<std::pair<std::string, std::string>>& overrides) {
    SimConfig cfg;
    if (file_path)
        for (const auto& [k, v] : parse_config_file(*file_path))
            set_config_value(cfg, k, v);
    for (const auto& [k, v] : overrides) set_config_value(cfg, k, v);
    validate_config(cfg);
    return cfg;
}

std::vector<std::pair<std::string, std::string>> serialize_config(const SimConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(fields().size());
    for (const auto& [name, field] : fields()) out.emplace_back(name, field.get(cfg));
    return out;
}

std::uint64_t config_hash(const SimConfig& cfg) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& [k, v] : serialize_config(cfg)) {
        mix(k);
        mix("=");
        mix(v);
        mix("\n");
    }
    return h;
}

const char* to_string(SimMode m) {
    return m == SimMode::IDEAL ? "IDEAL" : "REALISTIC";
}
const char* to_string(SeparationMode m) {
    return m == SeparationMode::DICHROIC ? "DICHROIC" : "PBS";
}
const char* to_string(FilterModel m) {
    return m == FilterModel::GAUSSIAN ? "GAUSSIAN" : "BRICKWALL";
}
const char* to_string(DetectorType t) {
    return t == DetectorType::STANDARD ? "STANDARD" : "PNR";
}

} // namespace zalm
