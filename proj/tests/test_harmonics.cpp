#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ovalshell/harmonics.hpp"
#include "study_case.hpp"

using namespace ovalshell;
using ovalshell::testing::relative_error;
using ovalshell::testing::study_material;
using ovalshell::testing::study_pipe;

namespace {

// Fourth-order central difference of f at x.
template <typename F>
double derivative(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

}  // namespace

TEST(FourierLoad, Normalisation) {
  const auto unit = fourier_load(kPi, 1.0);
  EXPECT_DOUBLE_EQ(unit.p0, 1.0);
  EXPECT_DOUBLE_EQ(unit.pn, 2.0);
  EXPECT_NEAR(fourier_load(1e6, 304.3).p0, 1046.0397180, 1e-6);
  EXPECT_THROW(fourier_load(1.0, 0.0), Error);
}

TEST(FourierLoad, PartialSumsCarryTheFullPair) {
  // Trapezoidal quadrature is exact for trigonometric polynomials of degree
  // below the point count, so the circumferential integral is checked exactly.
  const double force = 2.5e4;
  const double radius = 304.3;
  const auto load = fourier_load(force, radius);
  const int points = 512;
  for (int n_max = 2; n_max <= 60; n_max += 2) {
    double integral = 0.0;
    for (int k = 0; k < points; ++k) {
      integral += load.intensity(2.0 * kPi * k / points, n_max);
    }
    integral *= 2.0 * kPi / points * radius;
    EXPECT_LT(relative_error(integral, 2.0 * force), 1e-12) << "n_max = " << n_max;
  }
}

TEST(HarmonicBeam, StudyCaseSecondHarmonic) {
  const auto beam = harmonic_beam(study_pipe(), study_material(), 2);
  EXPECT_LT(relative_error(beam.rigidity, 2.3901188330e13), 1e-9);
  EXPECT_LT(relative_error(beam.stiffness, 1.2903651767e2), 1e-9);
  EXPECT_LT(relative_error(beam.psi, 1.0778499036e-3), 1e-9);
}

TEST(HarmonicBeam, Scaling) {
  const auto pipe = study_pipe();
  const auto mat = study_material();
  const auto b2 = harmonic_beam(pipe, mat, 2);
  const auto b4 = harmonic_beam(pipe, mat, 4);
  EXPECT_LT(relative_error(b4.rigidity / b2.rigidity, 1.0 / 16.0), 1e-14);
  EXPECT_LT(relative_error(b4.stiffness / b2.stiffness, 225.0 / 9.0), 1e-14);
}

TEST(HarmonicBeam, PsiReducedForm) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> diameter(50.0, 3000.0);
  std::uniform_real_distribution<double> fraction(0.005, 0.2);
  std::uniform_real_distribution<double> nu(0.0, 0.45);
  for (int i = 0; i < 100; ++i) {
    const double d = diameter(rng);
    const double t = fraction(rng) * d;
    const auto pipe = build_pipe(d, t, 1000.0);
    const auto mat = make_material(70000.0 + 1000.0 * i, nu(rng), 300.0);
    for (int n = 2; n <= 30; n += 2) {
      const auto beam = harmonic_beam(pipe, mat, n);
      const double reduced =
          std::pow(4.0 / 3.0, 0.25) * std::sqrt(t) * n * std::sqrt(n * n - 1.0) / std::pow(d, 1.5);
      EXPECT_LT(relative_error(beam.psi, reduced), 1e-12);
      EXPECT_LT(relative_error(std::pow(beam.psi, 4), beam.stiffness / (4.0 * beam.rigidity)),
                1e-12);
    }
  }
}

TEST(HarmonicBeam, RejectsOddOrSmallHarmonics) {
  for (int n : {-2, 0, 1, 3, 5}) {
    try {
      harmonic_beam(study_pipe(), study_material(), n);
      FAIL() << "n = " << n;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::OddOrSmallHarmonic);
    }
  }
}

TEST(HarmonicDeflection, UnitBeam) {
  const HarmonicBeam beam{2, 1.0, 4.0, std::pow(4.0 / 4.0, 0.25)};
  EXPECT_DOUBLE_EQ(beam.psi, 1.0);
  EXPECT_DOUBLE_EQ(harmonic_deflection(beam, 8.0, 0.0).w, 1.0);
  const auto zero = harmonic_deflection(beam, 0.0, 0.7);
  EXPECT_EQ(zero.w, 0.0);
  EXPECT_EQ(zero.curvature, 0.0);
}

TEST(HarmonicDeflection, DerivativesAndGoverningEquation) {
  const auto beam = harmonic_beam(study_pipe(), study_material(), 4);
  const double load = 1e5;
  const double h = 1.0;
  auto w = [&](double x) { return harmonic_deflection(beam, load, x).w; };
  auto slope = [&](double x) { return harmonic_deflection(beam, load, x).slope; };
  auto curv = [&](double x) { return harmonic_deflection(beam, load, x).curvature; };
  const double peak = w(0.0);
  for (double x = 10.0; x < 1500.0; x += 37.0) {
    EXPECT_NEAR(slope(x), derivative(w, x, h), 1e-9 * peak * beam.psi);
    EXPECT_NEAR(curv(x), derivative(slope, x, h), 1e-9 * peak * beam.psi * beam.psi);
    // B w'''' + m w = 0 away from the load
    auto third = [&](double s) { return derivative(curv, s, h); };
    const double d4 = derivative(third, x, h);
    EXPECT_NEAR(beam.rigidity * d4 + beam.stiffness * w(x), 0.0, 1e-6 * beam.stiffness * peak);
  }
  // slope vanishes under the load; shear carries half the load each side
  EXPECT_EQ(slope(0.0), 0.0);
  auto third = [&](double s) { return derivative(curv, s, 1e-2); };
  EXPECT_NEAR(beam.rigidity * third(0.1), load / 2.0, 1e-3 * load);
}

TEST(HarmonicDeflection, StudyCaseCurvatureStrain) {
  const auto pipe = study_pipe();
  const auto beam = harmonic_beam(pipe, study_material(), 2);
  const double curvature = harmonic_deflection(beam, -2e6, 1375.0).curvature;
  EXPECT_NEAR(to_microstrain(-pipe.outer_diameter() / 8.0 * curvature), 304.37074814, 1e-6);
}

TEST(PeakDeflectionSeries, TailBoundAndConvergence) {
  const auto pipe = study_pipe();
  const auto mat = study_material();
  try {
    peak_deflection_series(pipe, mat, 1e4, TruncatedSeries{20, 1e-6});
    FAIL() << "expected TailNotConverged";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TailNotConverged);
  }
  EXPECT_THROW(peak_deflection_series(pipe, mat, 1e4, TruncatedSeries{21, 1.0}), Error);

  const double truncated = peak_deflection_series(pipe, mat, 54957.0, TruncatedSeries{1'000'000, 1e-6});
  const double closed = peak_deflection_series(pipe, mat, 54957.0, ClosedForm{});
  EXPECT_LT(relative_error(closed, truncated), 1e-3);
  EXPECT_NEAR(closed, 0.66066167, 1e-7);
  // exact series value 0.554397002 (independent high-precision summation)
  EXPECT_NEAR(truncated, 0.66121307, 2e-6);
  EXPECT_DOUBLE_EQ(peak_deflection_series(pipe, mat, -54957.0, ClosedForm{}), -closed);
}

TEST(PeakDeflectionSeries, PartialSumsIncreaseAndStayBounded) {
  double previous = 0.0;
  for (int n_max = 2; n_max <= 2000; n_max += 2) {
    const double s = peak_series_partial_sum(n_max);
    EXPECT_GT(s, previous);
    EXPECT_LE(s, 0.554397002148783 + 1e-15);
    EXPECT_GE(s + peak_series_tail_bound(n_max), 0.554397002148783 - 1e-15);
    previous = s;
  }
  EXPECT_NEAR(peak_series_partial_sum(2), 2.0 / std::pow(3.0, 1.5), 1e-16);
}

TEST(TotalPeakDeflection, Values) {
  const auto pipe = study_pipe();
  const auto mat = study_material();
  EXPECT_NEAR(total_peak_deflection(pipe, mat, 27478.5), 0.33606891, 1e-8);
  EXPECT_EQ(total_peak_deflection(pipe, mat, 0.0), 0.0);
  EXPECT_NEAR(kRingTermExact, 0.2094596846, 1e-10);
  EXPECT_LT(relative_error(1.0 / kRingTermExact, 4.774), 2e-4);
}

TEST(SurfaceDisplacements, SimpleCases) {
  for (int n = 2; n <= 20; n += 2) {
    EXPECT_EQ(surface_displacements(n, 0.3, 1e-3, 0.0, 608.6).v, 0.0);
    EXPECT_EQ(surface_displacements(n, 0.3, 0.0, 0.4, 608.6).u, 0.0);
  }
  EXPECT_THROW(surface_displacements(3, 0.3, 0.0, 0.4, 608.6), Error);
}

TEST(SurfaceDisplacements, InextensionalConstraintsHold) {
  const auto pipe = study_pipe();
  const auto mat = study_material();
  const double d = pipe.outer_diameter();
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> xs(5.0, 2500.0);
  std::uniform_real_distribution<double> thetas(-kPi, kPi);
  for (int n = 2; n <= 10; n += 2) {
    const auto beam = harmonic_beam(pipe, mat, n);
    auto displacement = [&](double x, double theta) {
      const auto h = harmonic_deflection(beam, 5e4, x);
      return surface_displacements(n, h.w, h.slope, theta, d);
    };
    for (int k = 0; k < 50; ++k) {
      const double x = xs(rng);
      const double theta = thetas(rng);
      const double w = harmonic_deflection(beam, 5e4, x).w * std::cos(n * theta);
      const double dv_dtheta =
          derivative([&](double s) { return displacement(x, s).v; }, theta, 1e-3);
      const double dv_dx = derivative([&](double s) { return displacement(s, theta).v; }, x, 0.5);
      const double du_dtheta =
          derivative([&](double s) { return displacement(x, s).u; }, theta, 1e-3);
      EXPECT_NEAR(2.0 / d * dv_dtheta + 2.0 * w / d, 0.0, 1e-10);
      EXPECT_NEAR(dv_dx + 2.0 / d * du_dtheta, 0.0, 1e-10);
    }
  }
}

class OvalisationStrainTest : public ::testing::Test {
 protected:
  PipeSection pipe = study_pipe();
  Material mat = study_material();
};

TEST_F(OvalisationStrainTest, ImposedPairAtMidSpan) {
  const std::vector<OvalisationStation> stations{{-1375.0, -0.5e6}, {1375.0, -0.5e6}};
  const double eps = ovalisation_strain(pipe, mat, stations, 0.0, 0.0, 20);
  EXPECT_NEAR(eps, 303.31726984, 1e-6);
  EXPECT_LT(relative_error(eps, 305.25), 0.02);
  EXPECT_GT(eps, 0.0);
}

TEST_F(OvalisationStrainTest, RestrainedStationAt1800) {
  const std::vector<OvalisationStation> stations{{0.0, 27478.5}};
  EXPECT_NEAR(ovalisation_strain(pipe, mat, stations, 1800.0, 0.0, 20), -7.54970934, 1e-7);
}

TEST_F(OvalisationStrainTest, SecondHarmonicFlipsAtQuarterTurn) {
  const std::vector<OvalisationStation> stations{{0.0, 1e5}};
  const double top = ovalisation_strain(pipe, mat, stations, 900.0, 0.0, 2, 1.0);
  const double side = ovalisation_strain(pipe, mat, stations, 900.0, kPi / 2, 2, 1.0);
  EXPECT_NEAR(side, -top, 1e-12 * std::abs(top));
}

TEST_F(OvalisationStrainTest, NotConvergedAtStation) {
  const std::vector<OvalisationStation> stations{{100.0, 1e5}};
  try {
    ovalisation_strain(pipe, mat, stations, 100.0, 0.0);
    FAIL() << "expected TailNotConverged";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TailNotConverged);
  }
  const auto series = ovalisation_strain_series(pipe, mat, stations, 100.0, 0.0, 20);
  EXPECT_FALSE(series.converged);
  EXPECT_TRUE(std::isinf(series.tail_bound_ue));
  EXPECT_THROW(ovalisation_strain(pipe, mat, std::vector<OvalisationStation>{}, 0.0, 0.0), Error);
  EXPECT_THROW(ovalisation_strain(pipe, mat, stations, 0.0, 0.0, 7), Error);
}

TEST_F(OvalisationStrainTest, Linearity) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> force(-1e6, 1e6);
  std::uniform_real_distribution<double> scale(-10.0, 10.0);
  for (int k = 0; k < 50; ++k) {
    const std::vector<OvalisationStation> base{{-700.0, force(rng)}, {900.0, force(rng)}};
    const double a = scale(rng);
    std::vector<OvalisationStation> scaled = base;
    for (auto& st : scaled) st.force *= a;
    const double e1 = ovalisation_strain(pipe, mat, base, 123.0, 0.3, 20, 1.0);
    const double e2 = ovalisation_strain(pipe, mat, scaled, 123.0, 0.3, 20, 1.0);
    EXPECT_LE(std::abs(e2 - a * e1), 1e-12 * std::abs(a * e1));
  }
}

TEST_F(OvalisationStrainTest, Symmetry) {
  const std::vector<OvalisationStation> single{{250.0, -3e5}};
  for (double d = 50.0; d < 2000.0; d += 97.0) {
    for (double theta : {0.0, 0.4, 1.3, 2.9}) {
      const double a = ovalisation_strain(pipe, mat, single, 250.0 + d, theta, 20, 1.0);
      EXPECT_EQ(a, ovalisation_strain(pipe, mat, single, 250.0 + d, -theta, 20, 1.0));
      EXPECT_EQ(a, ovalisation_strain(pipe, mat, single, 250.0 - d, theta, 20, 1.0));
    }
  }
}

TEST_F(OvalisationStrainTest, SecondHarmonicDecayEnvelope) {
  const auto beam = harmonic_beam(pipe, mat, 2);
  const double d_mm = pipe.outer_diameter();
  const double at_load = std::abs(harmonic_strain_term(beam, d_mm, 1e5, 0.0, 0.0));
  for (double d = 0.0; d < 6000.0; d += 13.0) {
    const double term = std::abs(harmonic_strain_term(beam, d_mm, 1e5, d, 0.0));
    EXPECT_LE(term, at_load * std::sqrt(2.0) * std::exp(-beam.psi * d) * (1.0 + 1e-12));
  }
}

TEST_F(OvalisationStrainTest, SecondHarmonicDominatesFarFromStation) {
  const auto b2 = harmonic_beam(pipe, mat, 2);
  const auto b4 = harmonic_beam(pipe, mat, 4);
  const double d_mm = pipe.outer_diameter();
  for (double d = 2000.0; d < 6000.0; d += 25.0) {
    const double e2 = harmonic_strain_envelope(b2, d_mm, 1e5, d);
    const double e4 = harmonic_strain_envelope(b4, d_mm, 1e5, d);
    EXPECT_LT(e4, 0.01 * e2) << "d = " << d;
  }
}

TEST_F(OvalisationStrainTest, SignLaw) {
  const double psi2 = harmonic_beam(pipe, mat, 2).psi;
  for (double sign : {-1.0, 1.0}) {
    const std::vector<OvalisationStation> st{{0.0, sign * 2e5}};
    // inward (sign < 0): compressive under the station, every harmonic agrees
    const auto at_station = ovalisation_strain_series(pipe, mat, st, 0.0, 0.0, 20);
    EXPECT_LT(sign * -at_station.strain_ue, 0.0);
    // tensile over the first lobe beyond psi2 d = pi/4 (n = 2 zero crossing)
    for (double phase = kPi / 4 + 0.2; phase < 5 * kPi / 4 - 0.2; phase += 0.05) {
      const double eps = ovalisation_strain(pipe, mat, st, phase / psi2, 0.0, 20);
      EXPECT_GT(-sign * eps, 0.0) << "phase " << phase;
    }
  }
}
