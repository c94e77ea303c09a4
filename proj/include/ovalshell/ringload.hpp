#pragma once

// Axisymmetric (n = 0) part of a diametral force pair: a uniform radial
// ring line-load on an infinite cylinder.

#include <cmath>

#include "ovalshell/core.hpp"

namespace ovalshell {

struct AttenuationParams {
  double mu;     // mm, decay length
  double delta;  // N*mm, plate flexural rigidity per unit width
};

inline AttenuationParams attenuation_params(const PipeSection& pipe, const Material& mat) {
  const double d = pipe.outer_diameter();
  const double t = pipe.wall_thickness();
  const double mu4 = d * d * t * t / (12.0 * mat.plate_factor());
  const double delta = mat.youngs_modulus * t * mu4 / (d * d);
  return AttenuationParams{std::pow(mu4, 0.25), delta};
}

/// Peak radial displacement under the ring load, F*mu^3 / (4*pi*D*delta).
/// This is twice the classical infinite-shell value F*mu^3 / (8*pi*D*delta);
/// the larger value is kept because the combined peak-deflection formula is
/// built on it (see verify).
inline double ring_load_peak(double force, const AttenuationParams& params,
                             const PipeSection& pipe) {
  const double mu = params.mu;
  return force * mu * mu * mu / (4.0 * kPi * pipe.outer_diameter() * params.delta);
}

/// Classical infinite-shell ring-load peak, F*mu^3 / (8*pi*D*delta).
inline double ring_load_peak_classical(double force, const AttenuationParams& params,
                                       const PipeSection& pipe) {
  return 0.5 * ring_load_peak(force, params, pipe);
}

/// w_I(x) = w_I(0) * exp(-x/mu) * cos(x/mu), positive toward the load at x = 0.
inline double ring_load_profile(double force, double x, const AttenuationParams& params,
                                const PipeSection& pipe) {
  require(x >= 0.0, ErrorCode::NegativeAxialCoordinate, "axial coordinate must be >= 0");
  const double s = x / params.mu;
  return ring_load_peak(force, params, pipe) * std::exp(-s) * std::cos(s);
}

/// Second axial derivative of ring_load_profile.
inline double ring_load_curvature(double force, double x, const AttenuationParams& params,
                                  const PipeSection& pipe) {
  require(x >= 0.0, ErrorCode::NegativeAxialCoordinate, "axial coordinate must be >= 0");
  const double s = x / params.mu;
  return ring_load_peak(force, params, pipe) * 2.0 / (params.mu * params.mu) * std::exp(-s) *
         std::sin(s);
}

/// Outer-fibre longitudinal bending strain of the axisymmetric component, in
/// microstrain. Reported for information only; it is not superposed onto the
/// harmonic strains (it has decayed away at the distances of interest).
inline double ring_load_surface_strain(double force, double x, const AttenuationParams& params,
                                       const PipeSection& pipe) {
  return to_microstrain(-0.5 * pipe.wall_thickness() * ring_load_curvature(force, x, params, pipe));
}

}  // namespace ovalshell
