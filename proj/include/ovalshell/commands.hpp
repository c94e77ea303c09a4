#pragma once

// Implementation of the ovalshell CLI subcommands, writing to caller-provided
// streams so they can be exercised without a process boundary.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ovalshell/brazier.hpp"
#include "ovalshell/core.hpp"
#include "ovalshell/harmonics.hpp"
#include "ovalshell/oracle.hpp"
#include "ovalshell/scenario_file.hpp"
#include "ovalshell/scenarios.hpp"

namespace ovalshell {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitNonConvergence = 3,
};

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::TailNotConverged:
    case ErrorCode::SingularSystem:
      return kExitNonConvergence;
    default:
      return kExitValidation;
  }
}

inline const char* kProfileHeader =
    "x_mm,w_mm,eps_bend_ue,eps_oval_ue,eps_top_ue,eps_bot_ue,sigma_top_mpa,sigma_bot_mpa";

/// Fixed 6-significant-digit formatting used for every CSV field.
inline std::string csv_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Analysis {
  RegimeReport regime;
  double chi = 0.0;                // 1/mm, at the bending stress of the scenario
  double eps_bend = 0.0;           // microstrain
  double sigma_bend = 0.0;         // MPa
  double equivalent_force = 0.0;   // N, at chi
  double equivalent_force_yield = 0.0;  // N, at yield curvature
  FlatteningResult flattening{};   // at chi
  double station_force = 0.0;      // N, restrained only
  std::vector<OvalisationStation> stations;
  std::vector<StrainSample> samples;
};

inline std::vector<double> report_points(const Scenario& sc) {
  if (!sc.report_x_mm.empty()) return sc.report_x_mm;
  if (sc.mode == LoadingMode::Imposed) {
    double lo = sc.stations.front().x0;
    double hi = lo;
    for (const auto& st : sc.stations) {
      lo = std::min(lo, st.x0);
      hi = std::max(hi, st.x0);
    }
    return {0.5 * (lo + hi)};
  }
  return {sc.length_mm};
}

inline std::vector<OvalisationStation> scenario_stations(const Scenario& sc,
                                                         const Analysis& a) {
  if (sc.mode == LoadingMode::Imposed) return sc.stations;
  return {OvalisationStation{0.0, a.station_force}};
}

/// Everything `analyze` reports, minus formatting. Throws on invalid input or
/// (at the report points) on non-convergence.
inline Analysis analyze_scenario(const Scenario& sc) {
  validate(sc);
  const auto pipe = sc.pipe();
  const auto mat = sc.material();
  const SeriesOptions series{sc.numerics.n_max, sc.numerics.tail_tol};

  Analysis a;
  a.regime = classify_regime(pipe);
  if (sc.mode == LoadingMode::Restrained) {
    RestrainedOptions opts;
    opts.series = series;
    opts.restraint_force = sc.restraint_force_n;
    const auto setup = restrained_setup(pipe, mat, sc.target_stress_mpa, opts);
    a.chi = setup.chi;
    a.eps_bend = setup.eps_bend;
    a.sigma_bend = sc.target_stress_mpa;
    a.station_force = setup.station_force;
  } else {
    a.eps_bend = sc.bending_strain_ue;
    a.sigma_bend = mat.youngs_modulus * from_microstrain(sc.bending_strain_ue);
    a.chi = from_microstrain(sc.bending_strain_ue) / pipe.radius();
  }
  a.equivalent_force = equivalent_restraint_force(a.chi, pipe, mat);
  a.equivalent_force_yield =
      equivalent_restraint_force(curvature_from_stress(mat.yield_stress, mat, pipe), pipe, mat);
  a.flattening = brazier_flattening(a.chi, pipe, mat);
  a.flattening.equivalent_force = a.equivalent_force;
  a.stations = scenario_stations(sc, a);
  for (double x : report_points(sc)) {
    a.samples.push_back(strain_sample(pipe, mat, a.eps_bend, a.stations, x, series));
  }
  return a;
}

inline void emit_warnings(const Scenario& sc, const Analysis& a, std::ostream& diag) {
  if (a.regime.regime != Regime::LongWave) {
    diag << "warning: half-wavelength parameter " << a.regime.lambda << " is "
         << to_string(a.regime.regime)
         << "; the beam-on-foundation reduction assumes the long-wave regime\n";
  }
  if (is_near_yield(a.sigma_bend, sc.material())) {
    diag << "warning: bending stress " << a.sigma_bend << " MPa is above "
         << kNearYieldFraction * 100.0 << "% of yield; elastic theory only\n";
  }
}

inline void write_analysis(std::ostream& out, const Scenario& sc, const Analysis& a) {
  char buf[256];
  auto line = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out << buf << '\n';
  };
  out << "# resolved scenario\n";
  std::ostringstream echo;
  write_scenario(echo, sc);
  std::istringstream lines(echo.str());
  for (std::string l; std::getline(lines, l);) out << "#   " << l << '\n';
  out << '\n';

  const auto pipe = sc.pipe();
  line("radius_mm                 %.6g", pipe.radius());
  line("second_moment_mm4         %.6g", pipe.second_moment());
  line("lambda                    %.6g", a.regime.lambda);
  line("regime                    %s", std::string(to_string(a.regime.regime)).c_str());
  line("mode                      %s", sc.mode == LoadingMode::Imposed ? "imposed" : "restrained");
  line("bending_stress_mpa        %.6g", a.sigma_bend);
  line("bending_strain_ue         %.6g", a.eps_bend);
  line("curvature_per_mm          %.6g", a.chi);
  line("equivalent_force_n        %.6g", a.equivalent_force);
  line("equivalent_force_yield_n  %.6g", a.equivalent_force_yield);
  line("flattening_w0_mm          %.6g", a.flattening.w0);
  line("diameter_shortening_mm    %.6g", a.flattening.diameter_shortening);
  line("deformed_diameter_mm      %.6g", a.flattening.deformed_diameter);
  for (const auto& st : a.stations) {
    line("station                   x_mm=%.6g force_n=%.6g beam_load_n=%.6g", st.x0, st.force,
         st.beam_load());
  }
  out << '\n';
  out << "x_mm,w_mm,eps_bend_ue,eps_oval_ue,eps_top_ue,eps_bot_ue,sigma_top_mpa,sigma_bot_mpa,ratio\n";
  for (const auto& s : a.samples) {
    out << csv_number(s.x) << ',' << csv_number(s.w) << ',' << csv_number(s.eps_bend) << ','
        << csv_number(s.eps_oval) << ',' << csv_number(s.eps_top) << ',' << csv_number(s.eps_bot)
        << ',' << csv_number(s.sigma_top) << ',' << csv_number(s.sigma_bot) << ','
        << csv_number(s.ratio) << '\n';
  }
}

inline int run_analyze(const Scenario& sc, std::ostream& out, std::ostream& diag) {
  const auto a = analyze_scenario(sc);
  emit_warnings(sc, a, diag);
  write_analysis(out, sc, a);
  return kExitOk;
}

inline std::vector<double> axial_grid(double start, double end, double step) {
  require(step > 0.0, ErrorCode::ValidationError, "x step must be positive");
  require(end >= start, ErrorCode::ValidationError, "x end must not precede x start");
  const auto count = static_cast<long>(std::floor((end - start) / step + 1e-9)) + 1;
  std::vector<double> xs;
  xs.reserve(count);
  for (long i = 0; i < count; ++i) xs.push_back(start + step * static_cast<double>(i));
  return xs;
}

/// Points coinciding with a station are written with the truncated series
/// and a warning, since the strain under a point load is singular.
inline int run_profile(const Scenario& sc, double x_start, double x_end, double x_step,
                       std::ostream& csv, std::ostream& diag) {
  validate(sc);
  const auto pipe = sc.pipe();
  const auto mat = sc.material();
  const SeriesOptions series{sc.numerics.n_max, sc.numerics.tail_tol};
  const auto xs = axial_grid(x_start, x_end, x_step);

  Analysis a;
  a.regime = classify_regime(pipe);
  std::vector<StrainSample> samples;
  if (sc.mode == LoadingMode::Restrained) {
    RestrainedOptions opts;
    opts.series = series;
    opts.restraint_force = sc.restraint_force_n;
    opts.allow_unconverged = true;
    samples = restrained_profile(pipe, mat, sc.target_stress_mpa, xs, opts);
    a.sigma_bend = sc.target_stress_mpa;
  } else {
    for (double x : xs) {
      samples.push_back(strain_sample(pipe, mat, sc.bending_strain_ue, sc.stations, x, series,
                                      true));
    }
    a.sigma_bend = mat.youngs_modulus * from_microstrain(sc.bending_strain_ue);
  }
  emit_warnings(sc, a, diag);

  csv << kProfileHeader << '\n';
  for (const auto& s : samples) {
    if (!s.converged) {
      diag << "warning: x = " << s.x
           << " mm: harmonic series not converged (point-load singularity); value truncated at n_max = "
           << sc.numerics.n_max << '\n';
    }
    csv << csv_number(s.x) << ',' << csv_number(s.w) << ',' << csv_number(s.eps_bend) << ','
        << csv_number(s.eps_oval) << ',' << csv_number(s.eps_top) << ',' << csv_number(s.eps_bot)
        << ',' << csv_number(s.sigma_top) << ',' << csv_number(s.sigma_bot) << '\n';
  }
  return kExitOk;
}

inline int run_verify(const Scenario& sc, std::ostream& out) {
  validate(sc);
  VerifyOptions opts;
  opts.fd_nodes = sc.numerics.fd_nodes;
  opts.tail_tol = sc.numerics.tail_tol;
  const auto rows = verify_report(sc.pipe(), sc.material(), opts);
  out << "check,closed_form,oracle,ratio,status,note\n";
  int undocumented = 0;
  for (const auto& r : rows) {
    const char* status = !r.flagged ? "ok" : (r.documented ? "documented" : "FLAGGED");
    if (r.flagged && !r.documented) ++undocumented;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.6f", r.closed_form, r.oracle, r.ratio);
    out << '"' << r.label << "\"," << buf << ',' << status << ",\"" << r.note << "\"\n";
  }
  return undocumented == 0 ? kExitOk : kExitFailure;
}

inline const char* kSweepHeader =
    "lambda,regime,curvature_per_mm,equivalent_force_n,flattening_w0_mm,"
    "diameter_shortening_mm,x_mm,eps_bend_ue,eps_oval_ue,eps_top_ue,eps_bot_ue,sigma_top_mpa,"
    "sigma_bot_mpa,ratio";

inline void write_sweep_row(std::ostream& csv, double value, const Analysis& a) {
  const auto& s = a.samples.front();
  csv << csv_number(value) << ',' << csv_number(a.regime.lambda) << ','
      << to_string(a.regime.regime) << ',' << csv_number(a.chi) << ','
      << csv_number(a.equivalent_force) << ',' << csv_number(a.flattening.w0) << ','
      << csv_number(a.flattening.diameter_shortening) << ',' << csv_number(s.x) << ','
      << csv_number(s.eps_bend) << ',' << csv_number(s.eps_oval) << ',' << csv_number(s.eps_top)
      << ',' << csv_number(s.eps_bot) << ',' << csv_number(s.sigma_top) << ','
      << csv_number(s.sigma_bot) << ',' << csv_number(s.ratio) << '\n';
}

/// One row per parameter value; a zero-width range gives a single row.
inline int run_sweep(const Scenario& sc, const std::string& param, double from, double to,
                     int steps, std::ostream& csv, std::ostream& diag) {
  {
    Scenario probe = sc;
    require(set_scalar(probe, param, from), ErrorCode::ValidationError,
            "unknown sweep parameter '" + param + "'");
  }
  require(steps >= 1, ErrorCode::ValidationError, "steps must be >= 1");
  const int count = from == to ? 1 : steps;
  require(count >= 2 || from == to, ErrorCode::ValidationError,
          "a non-degenerate range needs at least 2 steps");
  csv << param << ',' << kSweepHeader << '\n';
  for (int i = 0; i < count; ++i) {
    const double value = count == 1 ? from : from + (to - from) * i / (count - 1);
    Scenario point = sc;
    set_scalar(point, param, value);
    const auto a = analyze_scenario(point);
    emit_warnings(point, a, diag);
    write_sweep_row(csv, value, a);
  }
  return kExitOk;
}

}  // namespace ovalshell
