#pragma once

// JSON readers/writers for measures, bimeasures, increment laws and models,
// and the CSV path format. Malformed input raises ValidationError.

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "stable_spectra/bimeasure.hpp"
#include "stable_spectra/harmonisable.hpp"
#include "stable_spectra/spectral_measure.hpp"

namespace stable_spectra::io {

/// {"mode": "real"|"complex", "dimension": d, "atoms": [{"point": [...], "weight": w}, ...]}.
/// Points within 1e-6 of the unit sphere are normalised.
DiscreteSpectralMeasure measure_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DiscreteSpectralMeasure& m);

/// {"frequencies": [...], "F": [[{"re": .., "im": ..}, ...], ...]}; plain numbers
/// are accepted as real entries.
DiscreteBimeasure bimeasure_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DiscreteBimeasure& b);

/// {"alpha": a, "frequencies": [...], "joint_measure": {...}}; `alpha` may be
/// omitted when `fallback_alpha` is given.
IncrementLaw increment_law_from_json(const nlohmann::json& j, const double* fallback_alpha = nullptr);
nlohmann::json to_json(const IncrementLaw& law);

/// {"alpha": a, "frequencies": [...], "bimeasure": {...}|null, "increments": {...}|null}.
/// Without a bimeasure, F is computed from the increments.
HarmonisableModel model_from_json(const nlohmann::json& j);
nlohmann::json to_json(const HarmonisableModel& m);

/// Parse a file; errors name the file.
nlohmann::json read_json_file(const std::string& path);

/// Shortest round-trip-safe rendering is not used; values are printed with
/// 15 significant digits so outputs diff cleanly.
std::string format_number(double x);

/// CSV with header `path,t,re,im`, one row per (path, time).
void write_paths_csv(std::ostream& out, const PathMatrix& paths);

}  // namespace stable_spectra::io
