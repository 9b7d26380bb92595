#pragma once

#include <array>
#include <functional>
#include <string>

#include "ruledsl/grid.hpp"
#include "ruledsl/holo.hpp"
#include "ruledsl/report.hpp"

namespace ruledsl {

using R3 = std::array<double, 3>;

/// Euclidean cross product on R^3 (not the anti-bilinear product on C^3).
R3 r3_cross(const R3& a, const R3& b);
double r3_dot(const R3& a, const R3& b);
double r3_norm(const R3& a);

struct SurfaceJet {
  R3 x{}, x_s{}, x_t{}, x_ss{}, x_st{}, x_tt{};
};

/// A real function on a coordinate patch with partials up to order two.
struct RhoJet {
  double rho = 0.0;
  double rho_s = 0.0, rho_t = 0.0;
  double rho_ss = 0.0, rho_st = 0.0, rho_tt = 0.0;
};
using RhoFn = std::function<RhoJet(double, double)>;

/// rho = Re p(s + it): harmonic for every polynomial p.
RhoFn harmonic_rho(const HoloField& p);
/// "const" (rho = 1), "s", "t", "zero", or a coefficient list for Re p(z).
RhoFn harmonic_rho_named(const std::string& name);

/// Minimal surface x(s, t) in R^3 in isothermal coordinates, with a
/// harmonic function rho on it.
struct MinimalSurfaceData {
  std::string name;
  std::string rho_label;
  std::function<SurfaceJet(double, double)> x;
  RhoFn rho;
  SampleGrid domain;  // default sampling patch
};

/// Isothermality, minimality (x_ss + x_tt = 0) and harmonicity of rho,
/// normalized by the conformal factor |x_s|^2.
ResidualReport validate_minimal_surface(const MinimalSurfaceData& data, const SampleGrid& grid,
                                        double tolerance = 1e-6);

/// Catalog: "plane", "catenoid", "helicoid", "enneper". The surface is checked
/// against validate_minimal_surface on its default patch before being
/// returned; throws Error{BadParams} for unknown names or failed validation.
MinimalSurfaceData minimal_surface(const std::string& name, RhoFn rho, std::string rho_label);

}  // namespace ruledsl
