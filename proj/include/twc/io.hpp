#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "twc/grid.hpp"
#include "twc/hermite.hpp"
#include "twc/positivity.hpp"
#include "twc/wong_matrix.hpp"

namespace twc {

using Json = nlohmann::ordered_json;

/// {"d": int, "n_max": int, "coeffs": [[index..., re, im], ...]}; omitted entries are 0.
Json to_json(const HermiteCoeffVector& f);
HermiteCoeffVector hermite_vector_from_json(const Json& j);

/// {"d", "n_max", "entries": [[alpha1..., alpha2..., re, im], ...]}; omitted entries are 0.
Json to_json(const WongCoeffMatrix& c);
WongCoeffMatrix wong_matrix_from_json(const Json& j);

Json grid_header_json(const GridFunction& f);

Json to_json(const DecayFit& fit);
Json to_json(const GrowthSequence& seq);
Json to_json(const PositivityResult& p);
/// {"planted_s", "fitted_s_growth", "fitted_s_decay", "residuals": {...}, "pass",
///  "seed", "n_max", "N_max", ...}
Json to_json(const RegularityReport& r);
Json to_json(const WeylReport& r);

Json read_json_file(const std::filesystem::path& path);
/// Writes with a trailing newline; throws IoError.
void write_json_file(const std::filesystem::path& path, const Json& j);

/// 17 significant digits, round-trip exact.
std::string format_double(double v);

}  // namespace twc
