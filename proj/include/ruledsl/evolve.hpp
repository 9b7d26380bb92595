#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "ruledsl/cone.hpp"
#include "ruledsl/report.hpp"
#include "ruledsl/ruled_surface.hpp"

namespace ruledsl {

/// Periodic: s_j = a + j L / n on a circle of length L = b - a.
/// Interval: Chebyshev extrema s_j = a + (b - a)(1 - cos(pi j / (n - 1))) / 2.
enum class CurveDomain { Periodic, Interval };

/// Curve data (phi, psi) at one evolution time.
struct CurveState {
  CurveDomain domain = CurveDomain::Periodic;
  double a = 0.0;
  double b = 1.0;
  double t = 0.0;
  std::vector<CVec3> phi;
  std::vector<CVec3> psi;

  std::size_t n() const { return phi.size(); }
  double length() const { return b - a; }
  std::vector<double> nodes() const;
};

using CurveFn = std::function<std::pair<CVec3, CVec3>(double)>;

/// Samples (phi0, psi0) on the nodes of the given domain. Periodic grids need
/// a power-of-two n >= 4 and interval grids n >= 3; throws Error{BadParams}.
CurveState sample_curve(const CurveFn& init, std::size_t n, double a, double b,
                        CurveDomain domain = CurveDomain::Periodic);

/// phi0 = hl_cone phi(s, 0) over its 4 pi period; psi0 = d phi / ds (s, 0)
/// when `lie_twist_offset`, else 0.
CurveState hl_initial_state(std::size_t n, bool lie_twist_offset = false);

/// Spectral d/ds of one field of the curve.
std::vector<CVec3> curve_derivative(const CurveState& state, const std::vector<CVec3>& field);

/// Conditions "unit_norm" (| |phi| - 1 |), "omega_phi_dphi" and
/// "omega_phi_dpsi" at the nodes.
ResidualReport validate_initial(const CurveState& state, double tolerance = 1e-8);

struct EvolveOptions {
  bool renormalize = false;
  double blowup = 0.1;           // max allowed | |phi| - 1 |
  double initial_tolerance = 1e-8;
};

/// One RK4 step of phi' = phi x D phi, psi' = phi x D psi. Throws
/// Error{BlowUp} when | |phi_j| - 1 | exceeds opts.blowup.
CurveState step(const CurveState& state, double dt, const EvolveOptions& opts = {});

/// Diagnostics of one curve state.
struct CurveDiagnostics {
  double t = 0.0;
  double norm_drift = 0.0;
  double omega_phi = 0.0;
  double omega_psi = 0.0;
};
CurveDiagnostics diagnose(const CurveState& state);

/// Marches from state.t to t_end in equal steps of size at most |dt|.
/// Validates the initial data first (Error{InvalidInitialData}).
/// Diagnostics of every level are appended to `log` when given.
CurveState evolve(const CurveState& state, double t_end, double dt, const EvolveOptions& opts = {},
                  std::vector<CurveDiagnostics>* log = nullptr);

/// Marches to +t_max and -t_max and assembles the swept surface. Evaluation is
/// spectral in s and cubic Hermite in t (using the stored right-hand sides).
/// Evaluating outside [-t_max, t_max] throws Error{BadRange}; t_max <= 0 or
/// dt <= 0 throws Error{BadRange}.
RuledSurface evolve_to_surface(const CurveState& state, double t_max, double dt,
                               const EvolveOptions& opts = {},
                               std::vector<CurveDiagnostics>* log = nullptr);

}  // namespace ruledsl
