#pragma once

// Brazier ovalisation of a straight tube in bending and the pair of outward
// diametral forces that would hold the section round.

#include <cmath>
#include <optional>
#include <string>

#include "ovalshell/core.hpp"
#include "ovalshell/harmonics.hpp"

namespace ovalshell {

inline constexpr double kNearYieldFraction = 0.95;

struct BendingState {
  double sigma;                  // MPa, extreme-fibre axial stress
  double chi;                    // 1/mm
  std::optional<double> moment;  // N*mm
};

struct FlatteningResult {
  double w0;                   // mm, inward radial displacement of each load meridian
  double diameter_shortening;  // mm, 2 * w0
  double deformed_diameter;    // mm, D - 2 * w0
  double equivalent_force;     // N, zero unless requested
};

inline bool is_near_yield(double sigma, const Material& mat) noexcept {
  return std::abs(sigma) > kNearYieldFraction * mat.yield_stress;
}

/// chi = 2 sigma / (E D). Elastic only: |sigma| above yield is rejected.
inline double curvature_from_stress(double sigma, const Material& mat, const PipeSection& pipe) {
  require(std::abs(sigma) <= mat.yield_stress, ErrorCode::BeyondYield,
          "stress " + std::to_string(sigma) + " MPa exceeds yield " +
              std::to_string(mat.yield_stress) + " MPa");
  return 2.0 * sigma / (mat.youngs_modulus * pipe.outer_diameter());
}

inline double curvature_from_moment(double moment, const Material& mat, const PipeSection& pipe) {
  return moment / (mat.youngs_modulus * pipe.second_moment());
}

inline BendingState bending_state(double sigma, const Material& mat, const PipeSection& pipe) {
  const double chi = curvature_from_stress(sigma, mat, pipe);
  return BendingState{sigma, chi, chi * mat.youngs_modulus * pipe.second_moment()};
}

/// Ovalising pressure on the wall at angle alpha from the neutral axis.
inline double ovalising_pressure(double chi, const Material& mat, const PipeSection& pipe,
                                 double alpha) {
  const double lever_arm = pipe.radius() * std::sin(alpha);
  return chi * chi * mat.youngs_modulus * pipe.wall_thickness() * lever_arm;
}

inline FlatteningResult brazier_flattening(double chi, const PipeSection& pipe,
                                           const Material& mat) {
  const double d = pipe.outer_diameter();
  const double t = pipe.wall_thickness();
  const double w0 = chi * chi * std::pow(d, 5) * mat.plate_factor() / (32.0 * t * t);
  return FlatteningResult{w0, 2.0 * w0, d - 2.0 * w0, 0.0};
}

/// Force pair P whose total peak deflection equals the Brazier flattening at
/// curvature chi.
inline double equivalent_restraint_force(double chi, const PipeSection& pipe,
                                         const Material& mat) {
  const double r = pipe.radius();
  const double t = pipe.wall_thickness();
  const double coefficient =
      kSeriesClosedForm + kRingTermClosedForm * t / (r * std::pow(mat.plate_factor(), 0.75));
  return mat.youngs_modulus * std::pow(r, 4) * chi * chi * std::sqrt(t / r) / coefficient;
}

inline FlatteningResult restrained_flattening(double chi, const PipeSection& pipe,
                                              const Material& mat) {
  auto result = brazier_flattening(chi, pipe, mat);
  result.equivalent_force = equivalent_restraint_force(chi, pipe, mat);
  return result;
}

}  // namespace ovalshell
