#include "zalm/results.hpp"

#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

namespace zalm {

namespace {

std::string fmt(double d) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", d);
    return buf;
}

std::string hash_hex(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

void write_results(std::ostream& os, ResultsFormat format, const SimConfig& cfg,
                   const std::string& param_path,
                   const std::vector<SweepPoint>& points) {
    const std::string hash = hash_hex(config_hash(effective_config(cfg)));

    if (format == ResultsFormat::CSV) {
        os << "# zalm-results schema_version=" << kResultsSchemaVersion
           << " code_version=" << kVersion << "\n";
        os << "# config_hash=" << hash << " seed=" << cfg.seed
           << " param=" << (param_path.empty() ? "-" : param_path) << "\n";
        os << "param_value,n_trials,herald_rate,ebits_per_use,avg_fidelity,"
              "fidelity_stderr,n_phi_plus,n_psi_plus,n_psi_minus,n_phi_minus\n";
        for (const SweepPoint& p : points) {
            const Metrics& m = p.metrics;
            os << p.value << "," << m.n_trials << "," << fmt(m.herald_rate) << ","
               << fmt(m.ebits_per_use) << "," << fmt(m.avg_fidelity) << ","
               << fmt(m.fidelity_stderr) << ","
               << m.bell_counts[static_cast<int>(BellKind::PhiPlus)] << ","
               << m.bell_counts[static_cast<int>(BellKind::PsiPlus)] << ","
               << m.bell_counts[static_cast<int>(BellKind::PsiMinus)] << ","
               << m.bell_counts[static_cast<int>(BellKind::PhiMinus)] << "\n";
        }
        return;
    }

    nlohmann::ordered_json doc;
    doc["schema_version"] = kResultsSchemaVersion;
    doc["code_version"] = kVersion;
    doc["config_hash"] = hash;
    doc["seed"] = cfg.seed;
    doc["param"] = param_path;
    nlohmann::ordered_json config;
    for (const auto& [k, v] : serialize_config(cfg)) config[k] = v;
    doc["config"] = config;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const SweepPoint& p : points) {
        const Metrics& m = p.metrics;
        nlohmann::ordered_json row;
        row["param_value"] = p.value;
        row["n_trials"] = m.n_trials;
        row["herald_rate"] = m.herald_rate;
        row["ebits_per_use"] = m.ebits_per_use;
        row["avg_fidelity"] = m.avg_fidelity;
        row["fidelity_stderr"] = m.fidelity_stderr;
        nlohmann::ordered_json kinds;
        kinds["PhiPlus"] = m.bell_counts[static_cast<int>(BellKind::PhiPlus)];
        kinds["PsiPlus"] = m.bell_counts[static_cast<int>(BellKind::PsiPlus)];
        kinds["PsiMinus"] = m.bell_counts[static_cast<int>(BellKind::PsiMinus)];
        kinds["PhiMinus"] = m.bell_counts[static_cast<int>(BellKind::PhiMinus)];
        row["bell_counts"] = kinds;
        nlohmann::ordered_json stages;
        for (int s = 0; s < kNumFailureStages; ++s)
            stages[to_string(static_cast<FailureStage>(s))] = m.stage_counts[s];
        row["failure_stages"] = stages;
        doc["rows"].push_back(row);
    }
    os << doc.dump(2) << "\n";
}

} // namespace zalm
