#ifndef WARPED_SERIALIZE_HPP
#define WARPED_SERIALIZE_HPP

#include <json.hpp>

#include "warped/chart.hpp"
#include "warped/validation.hpp"

namespace warped {

/// Versioned chart file: {version, params, horizons, mu_max, tolerances,
/// table:[[r, mu], ...]}. Doubles round-trip exactly.
nlohmann::json chart_to_json(const MuChart& chart);

/// Inverse of chart_to_json. Throws std::invalid_argument on malformed or
/// wrong-version input.
MuChart chart_from_json(const nlohmann::json& j);

/// Suite report: {version, seed, results:[{name, family, max_error,
/// tolerance, passed, details}]}.
nlohmann::json report_to_json(const SuiteReport& report);

} // namespace warped

#endif // WARPED_SERIALIZE_HPP
