#ifndef WARPED_VALIDATION_HPP
#define WARPED_VALIDATION_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "warped/spacetime.hpp"

namespace warped {

/// One named cross-check. `passed` is equivalent to max_error <= tolerance;
/// checks that assert a lower bound (the negative control) report the
/// shortfall below the bound as max_error, so the same invariant holds.
struct CheckResult {
  std::string name;
  Family family = Family::Schw;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string details;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> results;
  std::vector<SpacetimeParams> params_sampled;
  bool all_passed() const;
};

struct SuiteOptions {
  int draws_per_family = 16;
  std::map<std::string, double> tol_overrides; // check name -> tolerance
};

/// Names of every check the suite can run, sorted.
std::vector<std::string> registry_check_names();

/// Default tolerance per check name.
const std::map<std::string, double>& default_check_tolerances();

/// Runs every applicable registered check for the selected families over
/// deterministic parameter draws (log-uniform in Q^2/m^2 and lambda m^2,
/// extremal and naked draws rejected). Identical seed and tolerances yield
/// an identical report. Check failures are recorded, never thrown.
SuiteReport run_suite(const std::set<Family>& families, std::uint64_t seed,
                      const SuiteOptions& options = {});

} // namespace warped

#endif // WARPED_VALIDATION_HPP
