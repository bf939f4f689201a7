// warpedbh: interior geometry of static charged / anti-de Sitter black holes
// as a multiply warped product. Subcommands solve horizons, tabulate the
// interior chart mu = F(r), evaluate curvature tables by two independent
// routes, run the cross-check suite, and compare limiting geometries.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "warped/chart.hpp"
#include "warped/geometry.hpp"
#include "warped/serialize.hpp"
#include "warped/spacetime.hpp"
#include "warped/validation.hpp"

namespace {

constexpr const char* kCacheEnvVar = "WARPEDBH_CACHE_DIR";

// Exit codes: 0 ok, 1 usage/parse, 2 geometry, 3 self-check divergence,
// 4 verification failure.
enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kGeometry = 2,
  kSelfCheck = 3,
  kVerifyFailed = 4,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SelfCheckDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ParamArgs {
  double mass = 0.0;
  double charge = 0.0;
  std::string ads_radius; // number or "inf"
  double lambda = 0.0;
  bool lambda_set = false;
  std::string family;
};

void add_param_flags(CLI::App* cmd, ParamArgs* args) {
  cmd->add_option("--mass", args->mass, "Mass m in geometric units")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--charge", args->charge,
                  "Charge Q (enters only as Q^2; default 0)");
  auto* ads = cmd->add_option(
      "--ads-radius", args->ads_radius,
      "AdS radius l (> 0), or 'inf' for the asymptotically flat limit");
  auto* lam = cmd->add_option_function<double>(
      "--lambda",
      [args](const double& v) {
        args->lambda = v;
        args->lambda_set = true;
      },
      "AdS curvature lambda = 1/l^2 directly (>= 0)");
  lam->excludes(ads);
  ads->excludes(lam);
  cmd->add_option("--family", args->family,
                  "Assert the family of the parameters")
      ->check(CLI::IsMember({"RNAdS", "SchwAdS", "RN", "Schw"}));
}

warped::SpacetimeParams make_params(const ParamArgs& args) {
  double lambda = 0.0;
  if (args.lambda_set) {
    if (args.lambda < 0.0) throw UsageError("--lambda must be >= 0");
    lambda = args.lambda;
  } else if (!args.ads_radius.empty() && args.ads_radius != "inf") {
    char* end = nullptr;
    const double l = std::strtod(args.ads_radius.c_str(), &end);
    if (end == nullptr || *end != '\0' || !(l > 0.0))
      throw UsageError("--ads-radius expects a positive number or 'inf'");
    lambda = 1.0 / (l * l);
  }
  const warped::SpacetimeParams params{args.mass, args.charge * args.charge,
                                       lambda};
  params.validate();
  if (!args.family.empty()) {
    const auto want = warped::family_from_string(args.family);
    if (warped::classify(params) != *want)
      throw UsageError("parameters classify as " +
                       std::string(warped::to_string(warped::classify(params))) +
                       ", not " + args.family);
  }
  return params;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

// --- chart cache -----------------------------------------------------------

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

warped::MuChart obtain_chart(const warped::SpacetimeParams& params,
                             int samples) {
  const char* dir = std::getenv(kCacheEnvVar);
  if (dir == nullptr || *dir == '\0')
    return warped::build_chart(params, samples);

  const std::string key = "m=" + num(params.mass) +
                          ";q2=" + num(params.charge_sq) +
                          ";lam=" + num(params.ads_curvature) +
                          ";n=" + std::to_string(samples) +
                          ";qt=" + num(warped::MuChart::kDefaultQuadTol) +
                          ";it=" + num(warped::MuChart::kDefaultInvTol);
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json",
                static_cast<unsigned long long>(fnv1a(key)));
  const std::filesystem::path file = std::filesystem::path(dir) / name;

  try {
    if (std::filesystem::exists(file)) {
      std::ifstream in(file, std::ios::binary);
      nlohmann::json j;
      in >> j;
      warped::MuChart chart = warped::chart_from_json(j);
      if (chart.params().mass == params.mass &&
          chart.params().charge_sq == params.charge_sq &&
          chart.params().ads_curvature == params.ads_curvature &&
          static_cast<int>(chart.table().size()) == samples)
        return chart;
    }
  } catch (const std::exception& e) {
    std::cerr << "warning: ignoring unreadable cache entry " << file << ": "
              << e.what() << "\n";
  }

  warped::MuChart chart = warped::build_chart(params, samples);
  try {
    std::filesystem::create_directories(dir);
    std::ofstream out(file, std::ios::binary);
    out << warped::chart_to_json(chart).dump(2) << "\n";
  } catch (const std::exception& e) {
    std::cerr << "warning: cannot write chart cache: " << e.what() << "\n";
  }
  return chart;
}

// --- subcommands -----------------------------------------------------------

int run_horizons(const ParamArgs& args) {
  const warped::SpacetimeParams params = make_params(args);
  const warped::HorizonData h = warped::solve_horizons(params);
  std::ostringstream out;
  out << "family = " << warped::to_string(warped::classify(params)) << "\n"
      << "r_minus = " << num(h.r_minus) << "\n"
      << "r_plus = " << num(h.r_plus) << "\n"
      << "gap = " << num(h.gap) << "\n"
      << "extremality_margin = " << num(h.extremality_margin) << "\n";
  std::cout << out.str();
  return kOk;
}

int run_chart(const ParamArgs& args, int samples, const std::string& format,
              const std::string& output) {
  const warped::SpacetimeParams params = make_params(args);
  const warped::MuChart chart = obtain_chart(params, samples);

  std::string text;
  if (format == "json") {
    text = warped::chart_to_json(chart).dump(2) + "\n";
  } else {
    std::ostringstream out;
    out << "r,mu,lapse_sq\n";
    for (const warped::ChartNode& node : chart.table()) {
      const double n2 = node.r > 0.0
                            ? warped::lapse_squared(params, node.r)
                            : std::numeric_limits<double>::infinity();
      out << num(node.r) << ',' << num(node.mu) << ',' << num(n2) << "\n";
    }
    text = out.str();
  }
  write_output(text, output);
  return kOk;
}

std::vector<double> curvature_grid(const warped::HorizonData& h, int n) {
  std::vector<double> rs;
  rs.reserve(n);
  for (int i = 0; i < n; ++i)
    rs.push_back(h.r_minus + (i + 0.5) * h.gap / n);
  return rs;
}

int run_curvature(const ParamArgs& args, int samples, int grid,
                  std::optional<double> at_r, const std::string& via,
                  const std::string& format, const std::string& output) {
  const warped::SpacetimeParams params = make_params(args);
  const warped::MuChart chart = obtain_chart(params, samples);
  const warped::HorizonData& h = chart.horizons();

  std::vector<double> rs;
  if (at_r.has_value())
    rs.push_back(*at_r);
  else
    rs = curvature_grid(h, grid);

  const bool pipeline = via == "pipeline";
  std::vector<warped::RicciComponents> values;
  values.reserve(rs.size());
  for (const double r : rs) {
    const warped::RicciComponents closed =
        warped::ricci_closed_form(params, h, r);
    if (!pipeline) {
      values.push_back(closed);
      continue;
    }
    const warped::RicciComponents piped = warped::ricci_from_frame(
        warped::warp_frame(chart, warped::EvaluationPoint::at_radius(r)));
    const double comps[5][2] = {
        {piped.r_mumu, closed.r_mumu},
        {piped.r_tt, closed.r_tt},
        {piped.r_thth, closed.r_thth},
        {piped.r_phph_over_sin2, closed.r_phph_over_sin2},
        {piped.scalar, closed.scalar}};
    // The scalar is a near-total cancellation of the other entries, so the
    // absolute floor must scale with their magnitude (curvatures grow like
    // 1/m^2 toward small masses).
    double comp_scale = 1.0;
    for (const auto& pair : comps)
      comp_scale = std::max(comp_scale, std::abs(pair[1]));
    for (const auto& pair : comps)
      if (std::abs(pair[0] - pair[1]) >
          std::max(1e-7 * std::abs(pair[1]), 1e-9 * comp_scale))
        throw SelfCheckDivergence(
            "pipeline route deviates from the closed forms at r=" + num(r));
    values.push_back(piped);
  }

  std::string text;
  if (format == "json") {
    nlohmann::json j;
    j["version"] = 1;
    j["via"] = via;
    j["params"] = {{"mass", params.mass},
                   {"charge_sq", params.charge_sq},
                   {"ads_curvature", params.ads_curvature}};
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const auto& c = values[i];
      rows.push_back({{"r", rs[i]},
                      {"mu", chart.mu_at(rs[i])},
                      {"R_mumu", c.r_mumu},
                      {"R_tt", c.r_tt},
                      {"R_thth", c.r_thth},
                      {"R_phph_over_sin2", c.r_phph_over_sin2},
                      {"scalar", c.scalar}});
    }
    j["rows"] = std::move(rows);
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream out;
    out << "r,mu,R_mumu,R_tt,R_thth,R_phph_over_sin2,scalar\n";
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const auto& c = values[i];
      out << num(rs[i]) << ',' << num(chart.mu_at(rs[i])) << ','
          << num(c.r_mumu) << ',' << num(c.r_tt) << ',' << num(c.r_thth) << ','
          << num(c.r_phph_over_sin2) << ',' << num(c.scalar) << "\n";
    }
    text = out.str();
  }
  write_output(text, output);
  return kOk;
}

int run_verify(const std::vector<std::string>& family_names,
               std::uint64_t seed, const std::vector<std::string>& tol_args,
               const std::string& output) {
  std::set<warped::Family> families;
  if (family_names.empty()) {
    families = {warped::Family::RNAdS, warped::Family::SchwAdS,
                warped::Family::RN, warped::Family::Schw};
  } else {
    for (const auto& name : family_names) {
      const auto f = warped::family_from_string(name);
      if (!f.has_value()) throw UsageError("unknown family: " + name);
      families.insert(*f);
    }
  }

  warped::SuiteOptions opts;
  for (const auto& entry : tol_args) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw UsageError("--tol expects NAME=VALUE, got: " + entry);
    const std::string name = entry.substr(0, eq);
    char* end = nullptr;
    const double value = std::strtod(entry.c_str() + eq + 1, &end);
    if (end == nullptr || *end != '\0')
      throw UsageError("--tol expects a numeric value in: " + entry);
    opts.tol_overrides[name] = value;
  }

  const auto start = std::chrono::steady_clock::now();
  warped::SuiteReport report;
  try {
    report = warped::run_suite(families, seed, opts);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  write_output(warped::report_to_json(report).dump(2) + "\n", output);

  int failed = 0;
  for (const auto& r : report.results)
    if (!r.passed) ++failed;
  std::fprintf(stderr, "verify: %zu checks, %d failed (%.2f s)\n",
               report.results.size(), failed, elapsed);
  return report.all_passed() ? kOk : kVerifyFailed;
}

int run_limits(const ParamArgs& args, const std::string& drop, int grid,
               const std::string& format, const std::string& output) {
  const warped::SpacetimeParams full = make_params(args);
  warped::SpacetimeParams truncated = full;
  if (drop == "charge" || drop == "both") truncated.charge_sq = 0.0;
  if (drop == "lambda" || drop == "both") truncated.ads_curvature = 0.0;

  const warped::HorizonData hf = warped::solve_horizons(full);
  const warped::HorizonData ht = warped::solve_horizons(truncated);

  const double lo = std::max(hf.r_minus, ht.r_minus);
  const double hi = std::min(hf.r_plus, ht.r_plus);
  std::vector<double> rs;
  rs.reserve(grid);
  for (int i = 0; i < grid; ++i)
    rs.push_back(lo + (i + 0.5) * (hi - lo) / grid);

  const char* comp_names[5] = {"R_mumu", "R_tt", "R_thth", "R_phph_over_sin2",
                               "scalar"};
  double max_dev[5] = {0, 0, 0, 0, 0};
  std::vector<std::array<double, 10>> rows;
  rows.reserve(rs.size());
  for (const double r : rs) {
    const warped::RicciComponents a = warped::ricci_closed_form(full, hf, r);
    const warped::RicciComponents b =
        warped::ricci_closed_form(truncated, ht, r);
    const std::array<double, 10> row = {
        a.r_mumu, b.r_mumu, a.r_tt,   b.r_tt,   a.r_thth,
        b.r_thth, a.r_phph_over_sin2, b.r_phph_over_sin2, a.scalar, b.scalar};
    for (int c = 0; c < 5; ++c)
      max_dev[c] = std::max(max_dev[c], std::abs(row[2 * c] - row[2 * c + 1]));
    rows.push_back(row);
  }

  std::string text;
  if (format == "json") {
    nlohmann::json j;
    j["version"] = 1;
    j["drop"] = drop;
    j["full"] = {{"mass", full.mass},
                 {"charge_sq", full.charge_sq},
                 {"ads_curvature", full.ads_curvature}};
    j["truncated"] = {{"mass", truncated.mass},
                      {"charge_sq", truncated.charge_sq},
                      {"ads_curvature", truncated.ads_curvature}};
    nlohmann::json jrows = nlohmann::json::array();
    for (std::size_t i = 0; i < rs.size(); ++i) {
      nlohmann::json row = {{"r", rs[i]}};
      for (int c = 0; c < 5; ++c) {
        row[std::string(comp_names[c]) + "_full"] = rows[i][2 * c];
        row[std::string(comp_names[c]) + "_drop"] = rows[i][2 * c + 1];
      }
      jrows.push_back(std::move(row));
    }
    j["rows"] = std::move(jrows);
    nlohmann::json jdev;
    for (int c = 0; c < 5; ++c) jdev[comp_names[c]] = max_dev[c];
    j["max_abs_deviation"] = std::move(jdev);
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream out;
    out << "r";
    for (int c = 0; c < 5; ++c)
      out << ',' << comp_names[c] << "_full," << comp_names[c] << "_drop";
    out << "\n";
    for (std::size_t i = 0; i < rs.size(); ++i) {
      out << num(rs[i]);
      for (const double v : rows[i]) out << ',' << num(v);
      out << "\n";
    }
    for (int c = 0; c < 5; ++c)
      out << "# max_abs_deviation " << comp_names[c] << " = "
          << num(max_dev[c]) << "\n";
    text = out.str();
  }
  write_output(text, output);
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Interior geometry of static charged (anti-de Sitter) black holes as a "
      "multiply warped product"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 ok, 1 usage, 2 geometry (extremal/naked/domain),\n"
      "3 self-check divergence, 4 verification failure.\n"
      "Set WARPEDBH_CACHE_DIR to reuse chart tables across invocations.");

  ParamArgs params_args;
  int samples = 256;
  int grid = 128;
  std::string format = "csv";
  std::string output;
  std::string via = "closed";
  std::string drop;
  std::optional<double> at_r;
  std::uint64_t seed = 1;
  std::vector<std::string> verify_families;
  std::vector<std::string> tol_args;

  CLI::App* horizons =
      app.add_subcommand("horizons", "Solve the horizon radii");
  add_param_flags(horizons, &params_args);

  CLI::App* chart = app.add_subcommand(
      "chart", "Tabulate the interior coordinate mu = F(r)");
  add_param_flags(chart, &params_args);
  chart->add_option("--samples", samples, "Table rows (>= 16; default 256)")
      ->check(CLI::Range(warped::MuChart::kMinSamples, 1 << 20));
  chart->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  chart->add_option("--output", output, "Output path (default stdout)");

  CLI::App* curvature = app.add_subcommand(
      "curvature", "Curvature components on an interior grid");
  add_param_flags(curvature, &params_args);
  curvature->add_option("--samples", samples,
                        "Chart table size backing the mu column")
      ->check(CLI::Range(warped::MuChart::kMinSamples, 1 << 20));
  curvature->add_option("--grid", grid, "Interior grid points (default 128)")
      ->check(CLI::Range(1, 1 << 20));
  curvature
      ->add_option_function<double>(
          "--at-r", [&at_r](const double& v) { at_r = v; },
          "Evaluate at a single radius instead of a grid")
      ->excludes("--grid");
  curvature->add_option("--via", via,
                        "closed (family forms) or pipeline (generic route "
                        "with self-check)")
      ->check(CLI::IsMember({"closed", "pipeline"}));
  curvature->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  curvature->add_option("--output", output, "Output path (default stdout)");

  CLI::App* verify =
      app.add_subcommand("verify", "Run the cross-check suite");
  verify->add_option("--family", verify_families,
                     "Families to check (repeatable; default all)")
      ->check(CLI::IsMember({"RNAdS", "SchwAdS", "RN", "Schw"}));
  verify->add_option("--seed", seed, "Sampling seed (default 1)");
  verify->add_option("--tol", tol_args,
                     "Override a check tolerance, NAME=VALUE (repeatable)");
  verify->add_option("--output", output, "Report path (default stdout)");

  CLI::App* limits = app.add_subcommand(
      "limits", "Compare curvature against a truncated-parameter geometry");
  add_param_flags(limits, &params_args);
  limits->add_option("--drop", drop, "charge, lambda, or both")
      ->required()
      ->check(CLI::IsMember({"charge", "lambda", "both"}));
  limits->add_option("--grid", grid, "Comparison grid points (default 128)")
      ->check(CLI::Range(1, 1 << 20));
  limits->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  limits->add_option("--output", output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (horizons->parsed()) return run_horizons(params_args);
    if (chart->parsed()) return run_chart(params_args, samples, format, output);
    if (curvature->parsed())
      return run_curvature(params_args, samples, grid, at_r, via, format,
                           output);
    if (verify->parsed())
      return run_verify(verify_families, seed, tol_args, output);
    if (limits->parsed())
      return run_limits(params_args, drop, grid, format, output);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SelfCheckDivergence& e) {
    std::cerr << "self-check failure: " << e.what() << "\n";
    return kSelfCheck;
  } catch (const warped::ExtremalConfiguration& e) {
    std::cerr << "extremal configuration: " << e.what() << "\n";
    return kGeometry;
  } catch (const warped::NakedSingularity& e) {
    std::cerr << "naked singularity: " << e.what() << "\n";
    return kGeometry;
  } catch (const warped::SchemeInapplicable& e) {
    std::cerr << "scheme inapplicable: " << e.what() << "\n";
    return kGeometry;
  } catch (const warped::GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return kGeometry;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
