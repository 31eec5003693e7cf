#pragma once

#include <stdexcept>

namespace geoflow {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProjectionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Radial bracket [0.5, 1.5] does not enclose a root of phi; the deformation
// is too large for the star-shaped parametrization.
struct NoRootInBracket : ProjectionFailed {
  using ProjectionFailed::ProjectionFailed;
};

struct DegenerateGradient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroMomentum : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotARotation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedFormat : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace geoflow
