#pragma once

namespace geoflow {

// Central table of numeric defaults used across the library and the CLI.
inline constexpr double kDefaultDt = 1e-3;          // full-dynamics step
inline constexpr int kDefaultCircleNodes = 64;      // great-circle quadrature nodes
inline constexpr int kDefaultGridTheta = 181;       // portrait colatitude samples
inline constexpr int kDefaultGridPhi = 360;         // portrait longitude samples
inline constexpr double kDefaultGradStep = 1e-5;    // momentum-gradient FD step
inline constexpr double kDefaultCommutationStep = 1e-4;
inline constexpr int kDefaultMaxPsiDegree = 8;

inline constexpr double kEpsilonWarnThreshold = 0.2;
inline constexpr double kOnSurfaceTol = 1e-9;       // state validation tolerance
inline constexpr double kProjectionTarget = 1e-12;  // |phi| after projection
inline constexpr double kDegenerateGradientTol = 1e-12;
inline constexpr double kZeroMomentumTol = 1e-12;
inline constexpr double kStepPhiLimit = 1e-3;       // pre-stabilization |phi| limit
inline constexpr double kRotationTol = 1e-12;

}  // namespace geoflow
