#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ruledsl/cone.hpp"
#include "ruledsl/grid.hpp"
#include "ruledsl/report.hpp"
#include "ruledsl/ruled_surface.hpp"

namespace ruledsl {

/// One (s, t, r) sample of sl_defect, for per-sample dumps.
struct SlSample {
  double s = 0.0, t = 0.0, r = 0.0;
  double lagrangian = 0.0;
  double special = 0.0;
  bool immersed = true;
};

/// Normalized special Lagrangian defect of the tangent frame
///   (phi, r phi_s + psi_s, r phi_t + psi_t)
/// at every (s, t, r) of the grid (r from grid.r_values, or r = 1 if empty).
/// Conditions "lagrangian" and "special". Frames whose smallest singular value
/// is below 1e-8 times the largest are excluded and counted as non-immersion
/// samples; nodes where phi itself fails to be an immersion are counted as
/// degenerate directions. Throws Error{EmptyGrid}.
ResidualReport sl_defect(const RuledSurface& surf, const SampleGrid& grid, double phase_angle,
                         double tolerance = 1e-9, std::vector<SlSample>* dump = nullptr);

struct PhaseEstimate {
  double angle = 0.0;       // in [0, pi)
  double dispersion = 0.0;  // 1 - |mean of exp(2 i arg Omega)|
  std::size_t samples = 0;
};

/// Circular mean of arg Omega over immersed samples, folded modulo pi.
/// Throws Error{AllDegenerate} if no sample is immersed.
PhaseEstimate estimate_phase(const RuledSurface& surf, const SampleGrid& grid);

enum class RulingVerdict { CaseI, CaseII, Both, Neither };
std::string to_string(RulingVerdict v);

/// Case (i): omega(phi, psi_s) = 0 and psi_t = phi x psi_s + f phi with
/// f = g(psi_t - phi x psi_s, phi). Case (ii): psi_s, psi_t in the real span of
/// phi, phi_s, phi_t. Residuals are relative to max(|psi_s|, |psi_t|); samples
/// with locally constant psi satisfy both.
struct RulingClass {
  RulingVerdict verdict = RulingVerdict::Neither;
  double case_i_omega = 0.0;
  double case_i_f_residual = 0.0;
  double case_ii_span = 0.0;
  /// Largest change of the tangent 3-plane projector across immersed
  /// samples; checked only for case (ii).
  double planarity = 0.0;
  bool planar = false;
  double tolerance = 0.0;
  std::size_t samples = 0;
};

RulingClass classify_ruling(const RuledSurface& surf, const SampleGrid& grid, double tolerance = 1e-9);

struct AsymptoticFit {
  double slope = 0.0;
  double intercept = 0.0;
  double fit_residual = 0.0;  // rms of log d about the fitted line
  bool exact = false;         // d(r) vanished at every r
  std::vector<double> r;
  std::vector<double> distance;
};

/// d(r) = max over the (s, t) grid of |point(r, s - u/r, t - v/r) - r phi(s, t)|
/// for a surface built by a constant twist (u, v) of `cone`, and the
/// least-squares slope of log d against log r. Throws Error{BadFamily} if the
/// surface carries no constant twist, Error{BadRange} for fewer than two r.
AsymptoticFit asymptotic_order(const ConePatch& cone, const RuledSurface& surf, const SampleGrid& grid,
                               const std::vector<double>& r_samples);

/// dist(r phi + psi, line R phi) against sup |psi| over the grid.
/// Conditions "excess" (distance beyond sup |psi|) and "r_variation" (spread of
/// the distance over r at fixed (s, t)).
ResidualReport bounded_distance_check(const RuledSurface& surf, const SampleGrid& grid,
                                      double tolerance = 1e-12);

}  // namespace ruledsl
