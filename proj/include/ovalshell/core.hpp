#pragma once

// Units throughout: N, mm, MPa (N/mm^2). Strains are reported in microstrain.

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "ovalshell/errors.hpp"

namespace ovalshell {

inline constexpr double kMicro = 1e-6;
inline constexpr double kPi = std::numbers::pi;

inline constexpr double to_microstrain(double strain) { return strain / kMicro; }
inline constexpr double from_microstrain(double ue) { return ue * kMicro; }

/// Circular tube geometry. Derived properties are fixed at construction.
class PipeSection {
 public:
  PipeSection(double outer_diameter, double wall_thickness, double length)
      : outer_diameter_(outer_diameter), wall_thickness_(wall_thickness), length_(length) {
    require(std::isfinite(outer_diameter) && outer_diameter > 0.0, ErrorCode::NonPositiveDimension,
            "outer diameter must be positive");
    require(std::isfinite(wall_thickness) && wall_thickness > 0.0, ErrorCode::NonPositiveDimension,
            "wall thickness must be positive");
    require(std::isfinite(length) && length > 0.0, ErrorCode::NonPositiveDimension,
            "length must be positive");
    require(outer_diameter > 2.0 * wall_thickness, ErrorCode::WallExceedsDiameter,
            "outer diameter must exceed twice the wall thickness");
    radius_ = outer_diameter_ / 2.0;
    inner_diameter_ = outer_diameter_ - 2.0 * wall_thickness_;
    const double d2 = outer_diameter_ * outer_diameter_;
    const double di2 = inner_diameter_ * inner_diameter_;
    // (D^4 - Di^4) factored to keep precision for thin walls
    second_moment_ = kPi * (d2 - di2) * (d2 + di2) / 64.0;
  }

  double outer_diameter() const noexcept { return outer_diameter_; }
  double wall_thickness() const noexcept { return wall_thickness_; }
  double length() const noexcept { return length_; }
  double radius() const noexcept { return radius_; }
  double inner_diameter() const noexcept { return inner_diameter_; }
  double second_moment() const noexcept { return second_moment_; }

 private:
  double outer_diameter_;
  double wall_thickness_;
  double length_;
  double radius_ = 0.0;
  double inner_diameter_ = 0.0;
  double second_moment_ = 0.0;
};

struct Material {
  double youngs_modulus;  // MPa
  double poisson_ratio;
  double yield_stress;  // MPa

  /// 1 - nu^2, which shows up in every plate/shell rigidity.
  double plate_factor() const noexcept { return 1.0 - poisson_ratio * poisson_ratio; }
};

inline PipeSection build_pipe(double outer_diameter, double wall_thickness, double length) {
  return PipeSection(outer_diameter, wall_thickness, length);
}

inline Material make_material(double youngs_modulus, double poisson_ratio, double yield_stress) {
  require(std::isfinite(youngs_modulus) && youngs_modulus > 0.0, ErrorCode::InvalidMaterial,
          "Young's modulus must be positive");
  require(std::isfinite(poisson_ratio) && poisson_ratio >= 0.0 && poisson_ratio < 0.5,
          ErrorCode::InvalidMaterial, "Poisson's ratio must satisfy 0 <= nu < 0.5");
  require(std::isfinite(yield_stress) && yield_stress > 0.0, ErrorCode::InvalidMaterial,
          "yield stress must be positive");
  return Material{youngs_modulus, poisson_ratio, yield_stress};
}

enum class Regime { ShortWave, Intermediate, LongWave };

constexpr std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::ShortWave: return "ShortWave";
    case Regime::Intermediate: return "Intermediate";
    case Regime::LongWave: return "LongWave";
  }
  return "Unknown";
}

struct RegimeReport {
  double lambda;
  Regime regime;
};

/// Boundaries are half-open: exactly 0.5 and exactly 1.0 are Intermediate.
constexpr Regime regime_for(double lambda) noexcept {
  if (lambda < 0.5) return Regime::ShortWave;
  if (lambda > 1.0) return Regime::LongWave;
  return Regime::Intermediate;
}

/// Dimensionless half-wavelength parameter sqrt(t) * l / (D/2)^(3/2).
inline double half_wavelength_parameter(double outer_diameter, double wall_thickness,
                                        double length) {
  const double radius = outer_diameter / 2.0;
  return std::sqrt(wall_thickness) * length / std::sqrt(radius * radius * radius);
}

inline RegimeReport classify_regime(const PipeSection& pipe) {
  const double lambda =
      half_wavelength_parameter(pipe.outer_diameter(), pipe.wall_thickness(), pipe.length());
  return RegimeReport{lambda, regime_for(lambda)};
}

}  // namespace ovalshell
