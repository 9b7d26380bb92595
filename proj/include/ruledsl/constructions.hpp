#pragma once

#include <array>
#include <string>

#include "ruledsl/cone.hpp"
#include "ruledsl/holo.hpp"
#include "ruledsl/minimal_surface.hpp"
#include "ruledsl/ruled_surface.hpp"

namespace ruledsl {

/// psi = L_w phi = u phi_s + v phi_t. Special Lagrangian wherever nonsingular
/// when `cone` satisfies the cone condition.
RuledSurface lie_twist(const ConePatch& cone, const HoloField& w);

/// Closed-form twist of the Harvey-Lawson cone by u + iv = p(s + it):
///   (1/sqrt3) ( e^{i th1}(r + iu), e^{i th2}(r - iu/2 - i sqrt3 v/2),
///               e^{i th3}(r - iu/2 + i sqrt3 v/2) ).
RuledSurface hl_twist(const HoloField& p);

/// The same family with the roles exchanged: surface coordinates (u, v) and
/// s + it = p(u + iv). The surface's (s, t) arguments are read as (u, v).
RuledSurface hl_inverse_twist(const HoloField& p);

/// Closed-form constant twist N_{u,v} of the elliptic torus cone.
RuledSurface joyce_twist(const JoyceParams& params, double u, double v);

/// Twisted normal bundle of a minimal surface: phi = i n, psi = x + i p with
///   n = x_s x x_t / |x_s x x_t|,  p = ((rho_s x_t - rho_t x_s) / |x_s x x_t|) x n.
/// Special Lagrangian with phase i. Derivative oracles are finite differences.
/// Sampling a point with |x_s x x_t| < 1e-12 throws Error{DegenerateParametrization}.
RuledSurface borisenko(const MinimalSurfaceData& data);

/// psi -> psi - g(phi, psi) phi. Leaves the point set unchanged.
RuledSurface gauge_fix(const RuledSurface& surf);

}  // namespace ruledsl
