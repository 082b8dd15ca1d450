#pragma once

#include <string>

#include <json.hpp>

#include "sisrec/sequence.hpp"
#include "sisrec/sis.hpp"
#include "sisrec/spectral.hpp"

namespace sisrec {

/// Signal/observation schema: { "n": int, "sigma": float, "re": [...], "im": [...] },
/// arrays of length 2n+1 indexed t = -n..n. Spectra add "domain": "spectrum".
nlohmann::json signal_to_json(const TwoSidedSequence& x, std::int64_t n, double sigma = 0.0);
TwoSidedSequence signal_from_json(const nlohmann::json& j, std::int64_t* n_out = nullptr,
                                  double* sigma_out = nullptr);

nlohmann::json spectrum_to_json(const SpectrumVec& a);
SpectrumVec spectrum_from_json(const nlohmann::json& j);

/// SisSpec schema: { "roots": [{"re": ..., "im": ..., "mult": int}, ...] }.
nlohmann::json spec_to_json(const SisSpec& spec);
SisSpec spec_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace sisrec
