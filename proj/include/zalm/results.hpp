#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zalm/sim_engine.hpp"

namespace zalm {

inline constexpr int kResultsSchemaVersion = 1;

enum class ResultsFormat { CSV, JSON };

// One row per sweep point (a single run is a one-row file with an empty
// param value). Both formats carry the schema version, the effective
// config hash, the seed, and the code version so any row can be
// reproduced.
void write_results(std::ostream& os, ResultsFormat format, const SimConfig& cfg,
                   const std::string& param_path,
                   const std::vector<SweepPoint>& points);

} // namespace zalm
