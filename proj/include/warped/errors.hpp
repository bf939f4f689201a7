#ifndef WARPED_ERRORS_HPP
#define WARPED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace warped {

/// Base class for everything that can go wrong geometrically: degenerate
/// horizon structure, evaluation outside the interior region, inconsistent
/// inputs. Tooling maps these to a common exit code.
class GeometryError : public std::runtime_error {
public:
  explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The two horizons coincide within tolerance: the interior region is empty
/// and no interior chart exists.
class ExtremalConfiguration : public GeometryError {
public:
  explicit ExtremalConfiguration(const std::string& msg) : GeometryError(msg) {}
};

/// The lapse has no positive root: there is no horizon to go inside of.
class NakedSingularity : public GeometryError {
public:
  explicit NakedSingularity(const std::string& msg) : GeometryError(msg) {}
};

/// The interior warped-product construction does not apply to the requested
/// configuration (for example a nonpositive mass, where the lapse is negative
/// definite between any candidate radii).
class SchemeInapplicable : public GeometryError {
public:
  explicit SchemeInapplicable(const std::string& msg) : GeometryError(msg) {}
};

/// Horizon radii that no member of the spacetime family can produce
/// (they would require a negative squared charge or a negative curvature).
class InconsistentHorizons : public GeometryError {
public:
  explicit InconsistentHorizons(const std::string& msg) : GeometryError(msg) {}
};

/// Evaluation outside the domain of definition (beyond a horizon, a negative
/// radius, a coordinate outside the chart range).
class DomainError : public GeometryError {
public:
  explicit DomainError(const std::string& msg) : GeometryError(msg) {}
};

} // namespace warped

#endif // WARPED_ERRORS_HPP
