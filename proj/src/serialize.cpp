#include "warped/serialize.hpp"

#include <stdexcept>

namespace warped {

namespace {

constexpr int kChartFormatVersion = 1;
constexpr int kReportFormatVersion = 1;

} // namespace

nlohmann::json chart_to_json(const MuChart& chart) {
  nlohmann::json j;
  j["version"] = kChartFormatVersion;
  j["params"] = {{"mass", chart.params().mass},
                 {"charge_sq", chart.params().charge_sq},
                 {"ads_curvature", chart.params().ads_curvature}};
  j["horizons"] = {{"r_minus", chart.horizons().r_minus},
                   {"r_plus", chart.horizons().r_plus},
                   {"gap", chart.horizons().gap},
                   {"extremality_margin", chart.horizons().extremality_margin}};
  j["mu_max"] = chart.mu_max();
  j["tolerances"] = {{"quadrature", chart.quad_tol()},
                     {"inversion", chart.inv_tol()}};
  nlohmann::json table = nlohmann::json::array();
  for (const ChartNode& node : chart.table())
    table.push_back({node.r, node.mu});
  j["table"] = std::move(table);
  return j;
}

MuChart chart_from_json(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kChartFormatVersion)
      throw std::invalid_argument("chart_from_json: unsupported version");
    const auto& jp = j.at("params");
    const SpacetimeParams params = SpacetimeParams::create(
        jp.at("mass").get<double>(), jp.at("charge_sq").get<double>(),
        jp.at("ads_curvature").get<double>());
    const auto& jh = j.at("horizons");
    HorizonData horizons;
    horizons.r_minus = jh.at("r_minus").get<double>();
    horizons.r_plus = jh.at("r_plus").get<double>();
    horizons.gap = jh.at("gap").get<double>();
    horizons.extremality_margin = jh.at("extremality_margin").get<double>();
    const auto& jt = j.at("tolerances");
    std::vector<ChartNode> table;
    table.reserve(j.at("table").size());
    for (const auto& row : j.at("table")) {
      if (!row.is_array() || row.size() != 2)
        throw std::invalid_argument("chart_from_json: malformed table row");
      table.push_back({row[0].get<double>(), row[1].get<double>()});
    }
    return MuChart::restore(params, horizons, j.at("mu_max").get<double>(),
                            jt.at("quadrature").get<double>(),
                            jt.at("inversion").get<double>(), std::move(table));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("chart_from_json: ") + e.what());
  }
}

nlohmann::json report_to_json(const SuiteReport& report) {
  nlohmann::json j;
  j["version"] = kReportFormatVersion;
  j["seed"] = report.seed;
  nlohmann::json results = nlohmann::json::array();
  for (const CheckResult& r : report.results) {
    results.push_back({{"name", r.name},
                       {"family", to_string(r.family)},
                       {"max_error", r.max_error},
                       {"tolerance", r.tolerance},
                       {"passed", r.passed},
                       {"details", r.details}});
  }
  j["results"] = std::move(results);
  return j;
}

} // namespace warped
