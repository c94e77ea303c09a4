#pragma once

// Navier bending superposed with the longitudinal strain caused by imposed
// (inward) or prevented (equivalent outward) ovalisation.

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "ovalshell/brazier.hpp"
#include "ovalshell/core.hpp"
#include "ovalshell/harmonics.hpp"

namespace ovalshell {

/// Strains in microstrain and stresses in MPa at the top (theta = 0) and
/// bottom (theta = pi) fibres. For even harmonics the ovalisation strain is
/// identical on both fibres, only the bending part changes sign.
struct StrainSample {
  double x = 0.0;
  double w = 0.0;  // mm, radial displacement of the top fibre
  double eps_bend = 0.0;
  double eps_oval = 0.0;
  double eps_top = 0.0;
  double eps_bot = 0.0;
  double sigma_top = 0.0;
  double sigma_bot = 0.0;
  double ratio = 1.0;  // |eps_top| / |eps_bot|
  bool converged = true;
};

inline double navier_strain(double moment, const PipeSection& pipe, const Material& mat) {
  return to_microstrain(
      std::abs(moment / (mat.youngs_modulus * pipe.second_moment()) * pipe.radius()));
}

/// Bending moment producing an extreme-fibre strain of eps_bend_ue.
inline double moment_for_strain(double eps_bend_ue, const PipeSection& pipe, const Material& mat) {
  return from_microstrain(eps_bend_ue) * mat.youngs_modulus * pipe.second_moment() / pipe.radius();
}

inline StrainSample combine_strains(double x, double eps_bend_ue, double eps_oval_ue,
                                    const Material& mat) {
  StrainSample s;
  s.x = x;
  s.eps_bend = eps_bend_ue;
  s.eps_oval = eps_oval_ue;
  s.eps_top = eps_bend_ue + eps_oval_ue;
  s.eps_bot = -eps_bend_ue + eps_oval_ue;
  s.sigma_top = mat.youngs_modulus * from_microstrain(s.eps_top);
  s.sigma_bot = mat.youngs_modulus * from_microstrain(s.eps_bot);
  s.ratio = std::abs(s.eps_top) / std::abs(s.eps_bot);
  return s;
}

struct SeriesOptions {
  int n_max = kDefaultNMax;
  double tail_tol = kDefaultTailTol;
};

/// Strain sample at x with the ovalisation from `stations`. Throws
/// TailNotConverged unless `allow_unconverged` is set, in which case the
/// truncated value is returned and `converged` is cleared.
inline StrainSample strain_sample(const PipeSection& pipe, const Material& mat,
                                  double eps_bend_ue, std::span<const OvalisationStation> stations,
                                  double x, const SeriesOptions& opts,
                                  bool allow_unconverged = false) {
  const auto oval =
      ovalisation_strain_series(pipe, mat, stations, x, 0.0, opts.n_max, opts.tail_tol);
  if (!allow_unconverged) {
    require(oval.converged, ErrorCode::TailNotConverged,
            "harmonic tail bound " + std::to_string(oval.tail_bound_ue) +
                " ue exceeds tolerance at x = " + std::to_string(x) + " mm");
  }
  auto s = combine_strains(x, eps_bend_ue, oval.strain_ue, mat);
  s.w = ovalisation_displacement(pipe, mat, stations, x, 0.0, opts.n_max);
  s.converged = oval.converged;
  return s;
}

inline void require_inward(std::span<const OvalisationStation> stations) {
  require(!stations.empty(), ErrorCode::InvalidArgument, "at least one station is required");
  for (const auto& st : stations) {
    require(st.force < 0.0, ErrorCode::InvalidArgument,
            "imposed ovalisation needs inward (negative) station forces");
  }
}

/// Imposed ovalisation with a known ovalisation strain (pure superposition).
inline StrainSample imposed_ovalisation_case(double eps_bend_ue, double eps_oval_ue,
                                             const Material& mat, double x_eval = 0.0) {
  return combine_strains(x_eval, eps_bend_ue, eps_oval_ue, mat);
}

/// Imposed ovalisation with the strain computed from inward station forces.
inline StrainSample imposed_ovalisation_case(const PipeSection& pipe, const Material& mat,
                                             double eps_bend_ue,
                                             std::span<const OvalisationStation> stations,
                                             double x_eval, const SeriesOptions& opts = {}) {
  require_inward(stations);
  return strain_sample(pipe, mat, eps_bend_ue, stations, x_eval, opts);
}

struct RestrainedOptions {
  SeriesOptions series;
  /// Replaces the equivalent force derived from the target stress.
  std::optional<double> restraint_force;
  bool allow_unconverged = false;
};

struct RestrainedSetup {
  double chi;               // 1/mm
  double eps_bend;          // microstrain
  double equivalent_force;  // N, from the target stress
  double station_force;     // N, actually applied at x = 0
};

inline RestrainedSetup restrained_setup(const PipeSection& pipe, const Material& mat,
                                        double sigma_target, const RestrainedOptions& opts = {}) {
  const double chi = curvature_from_stress(sigma_target, mat, pipe);
  const double p_eq = equivalent_restraint_force(chi, pipe, mat);
  return RestrainedSetup{chi, to_microstrain(std::abs(sigma_target) / mat.youngs_modulus), p_eq,
                         opts.restraint_force.value_or(p_eq)};
}

/// Prevented ovalisation: one outward station at x = 0 carrying the
/// equivalent restraint force, superposed on bending at sigma_target.
inline std::vector<StrainSample> restrained_profile(const PipeSection& pipe, const Material& mat,
                                                    double sigma_target,
                                                    std::span<const double> x_grid,
                                                    const RestrainedOptions& opts = {}) {
  const auto setup = restrained_setup(pipe, mat, sigma_target, opts);
  const OvalisationStation station{0.0, setup.station_force};
  std::vector<StrainSample> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    out.push_back(strain_sample(pipe, mat, setup.eps_bend, std::span(&station, 1), x, opts.series,
                                opts.allow_unconverged));
  }
  return out;
}

}  // namespace ovalshell
