#pragma once

// Independent numerical checks for the closed forms: a finite-difference
// beam-on-Winkler-foundation solver and a bounded summation of the peak
// deflection series. Nothing here calls into the closed-form code paths
// except verify_report, which exists to compare the two.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "ovalshell/brazier.hpp"
#include "ovalshell/core.hpp"
#include "ovalshell/harmonics.hpp"
#include "ovalshell/ringload.hpp"

namespace ovalshell {

inline constexpr int kDefaultFdNodes = 4001;
inline constexpr int kMinFdNodes = 101;
inline constexpr double kMinDecayLengths = 8.0;

/// Pentadiagonal system A x = b, solved by banded Gaussian elimination.
/// Row i stores A(i, i-2) .. A(i, i+2). No pivoting: callers pass matrices
/// that are SPD up to row scaling.
template <typename Real>
class PentadiagonalSystem {
 public:
  explicit PentadiagonalSystem(std::size_t size) : rows_(size, Row{}), rhs_(size, Real(0)) {}

  std::size_t size() const noexcept { return rows_.size(); }

  void add(std::size_t row, std::size_t col, Real value) {
    rows_[row][col + 2 - row] += value;
  }
  Real at(std::size_t row, std::size_t col) const { return rows_[row][col + 2 - row]; }
  Real& rhs(std::size_t row) { return rhs_[row]; }

  /// Residual max-norm |A x - b| of a candidate solution.
  Real residual(const std::vector<Real>& x) const {
    Real worst = 0;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      Real r = -rhs_[i];
      for (std::size_t j = (i >= 2 ? i - 2 : 0); j <= std::min(i + 2, n - 1); ++j) {
        r += at(i, j) * x[j];
      }
      worst = std::max(worst, std::abs(r));
    }
    return worst;
  }

  std::vector<Real> solve() const {
    auto rows = rows_;
    auto b = rhs_;
    const std::size_t n = size();
    auto a = [&rows](std::size_t i, std::size_t j) -> Real& { return rows[i][j + 2 - i]; };
    Real scale = 0;
    for (const auto& row : rows) {
      for (Real v : row) scale = std::max(scale, std::abs(v));
    }
    const Real tiny = scale * std::numeric_limits<Real>::epsilon();
    for (std::size_t k = 0; k < n; ++k) {
      const Real pivot = a(k, k);
      require(std::abs(pivot) > tiny, ErrorCode::SingularSystem,
              "zero pivot at row " + std::to_string(k));
      for (std::size_t i = k + 1; i <= std::min(k + 2, n - 1); ++i) {
        const Real factor = a(i, k) / pivot;
        if (factor == Real(0)) continue;
        for (std::size_t j = k; j <= std::min(k + 2, n - 1); ++j) a(i, j) -= factor * a(k, j);
        b[i] -= factor * b[k];
      }
    }
    std::vector<Real> x(n);
    for (std::size_t k = n; k-- > 0;) {
      Real acc = b[k];
      for (std::size_t j = k + 1; j <= std::min(k + 2, n - 1); ++j) acc -= a(k, j) * x[j];
      x[k] = acc / a(k, k);
    }
    return x;
  }

 private:
  using Row = std::array<Real, 5>;
  std::vector<Row> rows_;
  std::vector<Real> rhs_;
};

struct FdSolution {
  int nodes = 0;
  double spacing = 0.0;  // mm
  double length = 0.0;   // mm
  std::vector<double> w;  // mm, one value per node, x_i = i * spacing
  double residual = 0.0;  // max-norm of the discrete residual over the load scale
  std::string left_bc = "symmetry";
  std::string right_bc = "clamped";

  double x(int i) const { return i * spacing; }
  double peak() const { return w.front(); }
};

/// Half of an infinite beam on a Winkler foundation under a central point
/// load P: B w'''' + m w = 0 on (0, L], w' = 0 with shear P/2 at x = 0,
/// clamped at x = L. Central differences with ghost nodes; the point load
/// enters as P/h on the symmetry node.
inline FdSolution fd_winkler(double rigidity, double stiffness, double load, double length,
                             int nodes = kDefaultFdNodes) {
  require(rigidity > 0.0 && stiffness > 0.0, ErrorCode::InvalidArgument,
          "rigidity and foundation stiffness must be positive");
  require(nodes >= kMinFdNodes, ErrorCode::InvalidArgument,
          "need at least " + std::to_string(kMinFdNodes) + " nodes");
  const double decay_length = std::pow(4.0 * rigidity / stiffness, 0.25);
  require(length >= kMinDecayLengths * decay_length * (1.0 - 1e-12), ErrorCode::DomainTooShort,
          "domain " + std::to_string(length) + " mm is shorter than 8 decay lengths (" +
              std::to_string(kMinDecayLengths * decay_length) + " mm)");

  using Real = long double;
  const int unknowns = nodes - 1;  // w at x = L is fixed at zero
  const Real h = static_cast<Real>(length) / unknowns;
  const Real c = static_cast<Real>(rigidity) / (h * h * h * h);
  constexpr std::array<Real, 5> stencil{1, -4, 6, -4, 1};

  PentadiagonalSystem<Real> system(unknowns);
  for (int i = 0; i < unknowns; ++i) {
    for (int k = -2; k <= 2; ++k) {
      int j = i + k;
      if (j < 0) j = -j;                        // symmetry ghost
      if (j == unknowns) continue;              // w(L) = 0
      if (j == unknowns + 1) j = unknowns - 1;  // w'(L) = 0 ghost
      system.add(i, j, c * stencil[k + 2]);
    }
    system.add(i, i, stiffness);
  }
  system.rhs(0) = static_cast<Real>(load) / h;

  const auto solution = system.solve();
  FdSolution out;
  out.nodes = nodes;
  out.spacing = static_cast<double>(h);
  out.length = length;
  out.w.reserve(nodes);
  for (Real v : solution) out.w.push_back(static_cast<double>(v));
  out.w.push_back(0.0);
  const Real load_scale = std::abs(static_cast<Real>(load)) / h;
  out.residual =
      load_scale > 0 ? static_cast<double>(system.residual(solution) / load_scale) : 0.0;
  require(out.residual <= 1e-8, ErrorCode::SingularSystem,
          "discrete residual " + std::to_string(out.residual) + " above 1e-8 of the load scale");
  return out;
}

/// Convenience overload for a harmonic beam on a domain of `decay_lengths` / psi.
inline FdSolution fd_winkler(const HarmonicBeam& beam, double load, int nodes = kDefaultFdNodes,
                             double decay_lengths = kMinDecayLengths) {
  return fd_winkler(beam.rigidity, beam.stiffness, load, decay_lengths / beam.psi, nodes);
}

struct SeriesSum {
  double value;       // partial sum up to n_reached
  int n_reached;      // last even harmonic included
  double tail_bound;  // upper bound on the omitted terms
  double tail_lower;  // lower bound on the omitted terms
};

/// sum_{n = 2, 4, ...} n / (n^2 - 1)^{3/2}, taken far enough that the
/// integral-test bound on the remainder is at most tail_tol.
inline SeriesSum series_sum(double tail_tol) {
  require(tail_tol > 0.0, ErrorCode::InvalidArgument, "tail tolerance must be positive");
  // Remainder after even n <= N lies in [1/(2 sqrt((N+2)^2 - 1)), 1/(2 sqrt(N^2 - 1))].
  auto upper = [](long double n) { return 0.5L / std::sqrt(n * n - 1.0L); };
  long double sum = 0.0L;
  long double n = 2.0L;
  for (;; n += 2.0L) {
    const long double q = n * n - 1.0L;
    sum += n / (q * std::sqrt(q));
    if (upper(n) <= tail_tol) break;
  }
  return SeriesSum{static_cast<double>(sum), static_cast<int>(n), static_cast<double>(upper(n)),
                   static_cast<double>(upper(n + 2.0L))};
}

// --- Closed form vs oracle ------------------------------------------------------

struct DiscrepancyRow {
  std::string label;
  double closed_form;
  double oracle;
  double ratio;   // closed_form / oracle
  bool flagged;   // ratio outside [0.999, 1.001]
  bool documented;  // flagged, but a known and explained discrepancy
  std::string note;
};

struct VerifyOptions {
  int fd_nodes = kDefaultFdNodes;
  double tail_tol = kDefaultTailTol;
  int max_harmonic = 10;
};

namespace detail {

inline DiscrepancyRow make_row(std::string label, double closed_form, double oracle,
                               bool documented, std::string note) {
  const double ratio = closed_form / oracle;
  const bool flagged = !(ratio >= 0.999 && ratio <= 1.001);
  return DiscrepancyRow{std::move(label), closed_form, oracle, ratio, flagged,
                        flagged && documented, std::move(note)};
}

}  // namespace detail

/// Max-norm difference between the FD solution and the closed-form harmonic
/// deflection, relative to the closed-form peak.
inline double harmonic_fd_error(const HarmonicBeam& beam, double load, const FdSolution& fd) {
  const double peak = std::abs(harmonic_deflection(beam, load, 0.0).w);
  double worst = 0.0;
  for (int i = 0; i < fd.nodes; ++i) {
    worst = std::max(worst, std::abs(fd.w[i] - harmonic_deflection(beam, load, fd.x(i)).w));
  }
  return worst / peak;
}

/// Compares each closed form with an independent evaluation for the given
/// pipe. The reference force is the equivalent restraint force at yield.
inline std::vector<DiscrepancyRow> verify_report(const PipeSection& pipe, const Material& mat,
                                                 const VerifyOptions& opts = {}) {
  std::vector<DiscrepancyRow> rows;
  const double chi_yield = 2.0 * mat.yield_stress / (mat.youngs_modulus * pipe.outer_diameter());
  const double force = equivalent_restraint_force(chi_yield, pipe, mat);
  const double beam_load = 2.0 * force;

  // Ring load as a beam of rigidity delta on a foundation E t / R^2, line load F/(pi D).
  const auto att = attenuation_params(pipe, mat);
  {
    const double r = pipe.radius();
    const double foundation = mat.youngs_modulus * pipe.wall_thickness() / (r * r);
    const double line_load = force / (kPi * pipe.outer_diameter());
    const auto fd = fd_winkler(att.delta, foundation, line_load,
                               kMinDecayLengths * std::pow(4.0 * att.delta / foundation, 0.25),
                               opts.fd_nodes);
    rows.push_back(detail::make_row(
        "ring-load peak w_I(0)", ring_load_peak(force, att, pipe), fd.peak(), true,
        "printed 4*pi denominator is twice the classical infinite-shell peak (8*pi)"));
  }

  double fd_first_harmonic_peak = 0.0;
  for (int n = 2; n <= opts.max_harmonic; n += 2) {
    const auto beam = harmonic_beam(pipe, mat, n);
    const auto fd = fd_winkler(beam, beam_load, opts.fd_nodes);
    if (n == 2) fd_first_harmonic_peak = fd.peak();
    rows.push_back(detail::make_row(
        "harmonic n=" + std::to_string(n) + " deflection w_n(0)",
        harmonic_deflection(beam, beam_load, 0.0).w, fd.peak(), false,
        "max-norm error " + std::to_string(harmonic_fd_error(beam, beam_load, fd))));
  }

  const auto series = series_sum(opts.tail_tol);
  const double scale = peak_deflection_scale(pipe, mat, beam_load);
  {
    // Each harmonic peak P psi_n / (2 m_n) is scale * c * n / (n^2 - 1)^{3/2};
    // c is read off the FD n = 2 peak.
    const double direct_coefficient = fd_first_harmonic_peak / scale / (2.0 / std::pow(3.0, 1.5));
    rows.push_back(detail::make_row(
        "peak series coefficient, printed vs sum P*psi_n/(2 m_n)",
        kSeriesPrefactor * series.value * scale, direct_coefficient * series.value * scale, true,
        "printed 2*3^(3/4)/pi prefactor is twice the direct reduction (FD n=2 scaled)"));
  }
  rows.push_back(detail::make_row("peak series closed form 1/1.244 vs exact sum",
                                  peak_deflection_series(pipe, mat, beam_load, ClosedForm{}),
                                  kSeriesPrefactor * series.value * scale, false,
                                  "series summed to n = " + std::to_string(series.n_reached)));
  rows.push_back(detail::make_row(
      "total peak deflection", total_peak_deflection(pipe, mat, beam_load),
      kSeriesPrefactor * series.value * scale + ring_load_peak(beam_load, att, pipe), false,
      "ring term evaluated with the beam load P"));
  rows.push_back(detail::make_row(
      "equivalent force round trip", total_peak_deflection(pipe, mat, force),
      brazier_flattening(chi_yield, pipe, mat).w0, false,
      "equivalent force " + std::to_string(force) + " N at yield curvature"));
  return rows;
}

}  // namespace ovalshell
