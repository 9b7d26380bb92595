#pragma once

#include <array>
#include <string>

#include "ruledsl/cone.hpp"
#include "ruledsl/holo.hpp"
#include "ruledsl/minimal_surface.hpp"
#include "ruledsl/ruled_surface.hpp"

namespace ruledsl {

/// Candidate eigenfunction on a conformal patch of a cone's link.
struct BryantRho {
  std::string label;
  RhoFn rho;
};

/// Builtins: "zero", "cos_s", "sin_s", "cos_t", "sin_t", "cos_2s", or
/// "cos:a,b" for cos(a s + b t). Throws Error{ConfigError} otherwise.
BryantRho bryant_rho(const std::string& name);

/// Order of the two legs of the L-shaped integration path from the basepoint.
enum class PathOrder { SFirst, TFirst };

/// Closure data of the one-form with components
///   b_s = -rho_t phi + rho phi_t,   b_t = rho_s phi - rho phi_s
/// over the nodes and cells of `domain`:
///   "eigenfunction"  |rho_ss + rho_tt + 2 lambda rho|
///   "mixed_partial"  |d_t b_s - d_s b_t| (componentwise sup norm)
///   "loop_integral"  |integral of b around each grid cell|
ResidualReport bryant_closure(const ConePatch& cone, const BryantRho& rho, const SampleGrid& domain,
                              double tolerance = 1e-8);

/// b(s, t) by composite Simpson quadrature with one Richardson step along an
/// L-shaped path from `basepoint`; b(basepoint) = 0.
CVec3 bryant_potential(const ConePatch& cone, const BryantRho& rho, std::array<double, 2> basepoint,
                       double s, double t, PathOrder order = PathOrder::SFirst);

/// (phi, b) on the rectangle `domain`. Throws Error{NotClosed} when
/// bryant_closure fails at `tolerance`.
RuledSurface bryant_twist(const ConePatch& cone, const BryantRho& rho, std::array<double, 2> basepoint,
                          const SampleGrid& domain, double tolerance = 1e-8);

/// (phi, L_w phi + b).
RuledSurface combined_twist(const ConePatch& cone, const HoloField& w, const BryantRho& rho,
                            std::array<double, 2> basepoint, const SampleGrid& domain,
                            double tolerance = 1e-8);

}  // namespace ruledsl
