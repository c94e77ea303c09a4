#pragma once

// Fourier decomposition of a diametral force pair and the equivalent
// beam-on-elastic-foundation model for each even circumferential harmonic.
//
// Sign conventions: theta is measured from the load meridian, w is positive
// outward at theta = 0, and inward (ovalisation-imposing) forces are negative.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ovalshell/core.hpp"
#include "ovalshell/ringload.hpp"

namespace ovalshell {

// Coefficients of the peak-deflection formulas.
inline const double kSeriesPrefactor = 2.0 * std::pow(3.0, 0.75) / kPi;
inline constexpr double kSeriesClosedForm = 1.0 / 1.244;
inline constexpr double kRingTermClosedForm = 1.0 / 4.774;
/// Exact counterpart of kRingTermClosedForm, 12^(1/4) * sqrt(2) / (4 pi).
inline const double kRingTermExact = std::pow(12.0, 0.25) * std::numbers::sqrt2 / (4.0 * kPi);

inline constexpr int kDefaultNMax = 20;
inline constexpr double kDefaultTailTol = 1e-6;

struct FourierLoad {
  double p0;  // N/mm, uniform component
  double pn;  // N/mm, amplitude shared by every even harmonic n >= 2

  /// Truncated line-load intensity p0 + pn * sum_{n=2,4..n_max} cos(n theta).
  double intensity(double theta, int n_max) const {
    double sum = 0.0;
    for (int n = 2; n <= n_max; n += 2) sum += std::cos(n * theta);
    return p0 + pn * sum;
  }
};

inline FourierLoad fourier_load(double force, double radius) {
  require(radius > 0.0, ErrorCode::NonPositiveDimension, "radius must be positive");
  const double p0 = force / (kPi * radius);
  return FourierLoad{p0, 2.0 * p0};
}

inline bool is_valid_harmonic(int n) noexcept { return n >= 2 && n % 2 == 0; }

struct HarmonicBeam {
  int n;
  double rigidity;   // B, N*mm^2
  double stiffness;  // m, N/mm^2
  double psi;        // 1/mm
};

inline HarmonicBeam harmonic_beam(const PipeSection& pipe, const Material& mat, int n) {
  require(is_valid_harmonic(n), ErrorCode::OddOrSmallHarmonic,
          "harmonic number must be even and >= 2, got " + std::to_string(n));
  const double d = pipe.outer_diameter();
  const double d3 = d * d * d;
  const double n2 = static_cast<double>(n) * n;
  const double rigidity =
      kPi * mat.youngs_modulus * pipe.wall_thickness() * d3 / (8.0 * mat.plate_factor() * n2 * n2);
  const double delta = attenuation_params(pipe, mat).delta;
  const double stiffness = 8.0 * kPi * delta * (n2 - 1.0) * (n2 - 1.0) / d3;
  return HarmonicBeam{n, rigidity, stiffness, std::pow(stiffness / (4.0 * rigidity), 0.25)};
}

/// Beam-on-foundation response at distance x >= 0 from a central point load.
struct HarmonicDeflection {
  double w;       // mm
  double slope;   // dw/dx
  double curvature;  // d2w/dx2, 1/mm
};

inline HarmonicDeflection harmonic_deflection(const HarmonicBeam& beam, double beam_load,
                                              double x) {
  const double psi = beam.psi;
  const double amp = beam_load * psi / (2.0 * beam.stiffness);
  const double decay = std::exp(-psi * x);
  const double c = std::cos(psi * x);
  const double s = std::sin(psi * x);
  return HarmonicDeflection{
      amp * decay * (c + s),
      -2.0 * amp * psi * decay * s,
      -2.0 * amp * psi * psi * decay * (c - s),
  };
}

// --- Peak deflection under the forces ----------------------------------------

struct TruncatedSeries {
  int n_max;
  double tail_tol;
};
struct ClosedForm {};
using SeriesMode = std::variant<TruncatedSeries, ClosedForm>;

/// Upper bound on sum_{even n > n_max} n/(n^2-1)^{3/2}, from the integral test.
inline double peak_series_tail_bound(int n_max) {
  const double nm = n_max;
  return 0.5 / std::sqrt(nm * nm - 1.0);
}

inline double peak_series_partial_sum(int n_max) {
  // Summed from the small end up so partial sums are reproducible for any n_max.
  long double sum = 0.0L;
  for (int n = 2; n <= n_max; n += 2) {
    const long double nn = n;
    const long double q = nn * nn - 1.0L;
    sum += nn / (q * std::sqrt(q));
  }
  return static_cast<double>(sum);
}

/// Common scale |P|(1-nu^2)/(E R) * (R/t)^{5/2}.
inline double peak_deflection_scale(const PipeSection& pipe, const Material& mat, double load) {
  const double r = pipe.radius();
  return load * mat.plate_factor() / (mat.youngs_modulus * r) *
         std::pow(r / pipe.wall_thickness(), 2.5);
}

/// Peak radial deflection under the load from all even harmonics.
inline double peak_deflection_series(const PipeSection& pipe, const Material& mat, double load,
                                     const SeriesMode& mode) {
  const double scale = peak_deflection_scale(pipe, mat, load);
  if (std::holds_alternative<ClosedForm>(mode)) {
    return kSeriesClosedForm * scale;
  }
  const auto& series = std::get<TruncatedSeries>(mode);
  require(is_valid_harmonic(series.n_max), ErrorCode::OddOrSmallHarmonic,
          "n_max must be even and >= 2");
  const double bound = peak_series_tail_bound(series.n_max);
  require(bound <= series.tail_tol, ErrorCode::TailNotConverged,
          "series tail bound " + std::to_string(bound) + " exceeds tolerance at n_max = " +
              std::to_string(series.n_max));
  return kSeriesPrefactor * peak_series_partial_sum(series.n_max) * scale;
}

/// Total radial displacement under the load: harmonic series plus ring load.
inline double total_peak_deflection(const PipeSection& pipe, const Material& mat, double load) {
  const double ring = kRingTermClosedForm * pipe.wall_thickness() /
                      (pipe.radius() * std::pow(mat.plate_factor(), 0.75));
  return peak_deflection_scale(pipe, mat, load) * (kSeriesClosedForm + ring);
}

// --- Inextensional long-wave kinematics ---------------------------------------

struct SurfaceDisplacements {
  double u;  // axial, mm
  double v;  // circumferential, mm
};

inline SurfaceDisplacements surface_displacements(int n, double w_n, double dw_dx, double theta,
                                                  double outer_diameter) {
  require(is_valid_harmonic(n), ErrorCode::OddOrSmallHarmonic,
          "harmonic number must be even and >= 2");
  const double nn = n;
  return SurfaceDisplacements{
      -outer_diameter / (2.0 * nn * nn) * dw_dx * std::cos(n * theta),
      -w_n / nn * std::sin(n * theta),
  };
}

// --- Longitudinal strain from ovalising stations ------------------------------

struct OvalisationStation {
  double x0;     // mm
  double force;  // N per side; negative inward (imposed), positive outward (restraint)

  double beam_load() const noexcept { return 2.0 * force; }
};

/// Longitudinal strain (absolute, not microstrain) of harmonic n at axial
/// distance d from a station carrying beam load P.
inline double harmonic_strain_term(const HarmonicBeam& beam, double outer_diameter,
                                   double beam_load, double distance, double theta) {
  const double nn = beam.n;
  const double curvature = harmonic_deflection(beam, beam_load, distance).curvature;
  return -outer_diameter / (2.0 * nn * nn) * curvature * std::cos(beam.n * theta);
}

/// Bound on |harmonic_strain_term| (absolute strain) over theta.
inline double harmonic_strain_envelope(const HarmonicBeam& beam, double outer_diameter,
                                       double beam_load, double distance) {
  const double nn = beam.n;
  const double psi = beam.psi;
  return std::numbers::sqrt2 * outer_diameter / (2.0 * nn * nn) * std::abs(beam_load) * psi *
         psi * psi / beam.stiffness * std::exp(-psi * distance);
}

struct OvalisationStrain {
  double strain_ue;      // truncated at n_max
  double tail_bound_ue;  // bound on the neglected harmonics n > n_max
  bool converged;
};

namespace detail {

inline double strain_tail_bound(const PipeSection& pipe, const Material& mat,
                                std::span<const OvalisationStation> stations, double x,
                                int n_max) {
  constexpr int kHarmonicCap = 1'000'000;
  double bound = 0.0;
  for (const auto& st : stations) {
    const double d = std::abs(x - st.x0);
    if (st.force == 0.0) continue;
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    double station_bound = 0.0;
    int n = n_max + 2;
    for (; n <= kHarmonicCap; n += 2) {
      const auto beam = harmonic_beam(pipe, mat, n);
      const double term = harmonic_strain_envelope(beam, pipe.outer_diameter(), st.beam_load(), d);
      station_bound += term;
      // psi_n grows like n^2, so once the exponential has taken over the
      // remaining terms fall off faster than geometrically.
      if (beam.psi * d > 50.0 && term <= 1e-16 * station_bound) break;
    }
    if (n > kHarmonicCap) return std::numeric_limits<double>::infinity();
    bound += station_bound;
  }
  return to_microstrain(bound);
}

}  // namespace detail

/// Superposed longitudinal strain at (x, theta) from every station, truncated
/// at n_max, together with a bound on the truncation error. Never throws on
/// non-convergence; see ovalisation_strain for the checked variant.
inline OvalisationStrain ovalisation_strain_series(const PipeSection& pipe, const Material& mat,
                                                   std::span<const OvalisationStation> stations,
                                                   double x, double theta, int n_max,
                                                   double tail_tol = kDefaultTailTol) {
  require(is_valid_harmonic(n_max), ErrorCode::OddOrSmallHarmonic, "n_max must be even and >= 2");
  require(!stations.empty(), ErrorCode::InvalidArgument, "at least one station is required");
  const double d = pipe.outer_diameter();
  double sum = 0.0;
  for (int n = 2; n <= n_max; n += 2) {
    const auto beam = harmonic_beam(pipe, mat, n);
    for (const auto& st : stations) {
      sum += harmonic_strain_term(beam, d, st.beam_load(), std::abs(x - st.x0), theta);
    }
  }
  const double strain_ue = to_microstrain(sum);
  const double tail = detail::strain_tail_bound(pipe, mat, stations, x, n_max);
  const bool converged = tail <= tail_tol * std::max(std::abs(strain_ue), 1.0);
  return OvalisationStrain{strain_ue, tail, converged};
}

/// Longitudinal strain in microstrain; throws TailNotConverged when the
/// neglected harmonics may exceed tail_tol (relative, floored at 1 microstrain).
inline double ovalisation_strain(const PipeSection& pipe, const Material& mat,
                                 std::span<const OvalisationStation> stations, double x,
                                 double theta, int n_max = kDefaultNMax,
                                 double tail_tol = kDefaultTailTol) {
  const auto result = ovalisation_strain_series(pipe, mat, stations, x, theta, n_max, tail_tol);
  require(result.converged, ErrorCode::TailNotConverged,
          "harmonic tail bound " + std::to_string(result.tail_bound_ue) +
              " ue exceeds tolerance at x = " + std::to_string(x) + " mm, n_max = " +
              std::to_string(n_max));
  return result.strain_ue;
}

/// Radial displacement at (x, theta) summed over stations and harmonics.
inline double ovalisation_displacement(const PipeSection& pipe, const Material& mat,
                                       std::span<const OvalisationStation> stations, double x,
                                       double theta, int n_max = kDefaultNMax) {
  require(is_valid_harmonic(n_max), ErrorCode::OddOrSmallHarmonic, "n_max must be even and >= 2");
  double sum = 0.0;
  for (int n = 2; n <= n_max; n += 2) {
    const auto beam = harmonic_beam(pipe, mat, n);
    for (const auto& st : stations) {
      sum += harmonic_deflection(beam, st.beam_load(), std::abs(x - st.x0)).w *
             std::cos(n * theta);
    }
  }
  return sum;
}

}  // namespace ovalshell
