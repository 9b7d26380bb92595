#include "ruledsl/minimal_surface.hpp"

#include <cmath>
#include <numbers>

#include "ruledsl/error.hpp"

namespace ruledsl {

R3 r3_cross(const R3& a, const R3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double r3_dot(const R3& a, const R3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double r3_norm(const R3& a) { return std::sqrt(r3_dot(a, a)); }

RhoFn harmonic_rho(const HoloField& p) {
  const HoloField dp = p.derivative();
  const HoloField ddp = dp.derivative();
  return [p, dp, ddp](double s, double t) {
    const cplx z(s, t);
    const cplx f = p.p(z);
    const cplx f1 = dp.p(z);
    const cplx f2 = ddp.p(z);
    // d/ds = d/dz, d/dt = i d/dz
    RhoJet j;
    j.rho = f.real();
    j.rho_s = f1.real();
    j.rho_t = -f1.imag();
    j.rho_ss = f2.real();
    j.rho_st = -f2.imag();
    j.rho_tt = -f2.real();
    return j;
  };
}

RhoFn harmonic_rho_named(const std::string& name) {
  if (name == "const") return harmonic_rho(HoloField({1.0}));
  if (name == "zero") return harmonic_rho(HoloField());
  if (name == "s") return harmonic_rho(HoloField({0.0, 1.0}));
  if (name == "t") return harmonic_rho(HoloField({0.0, cplx(0.0, -1.0)}));
  return harmonic_rho(HoloField::parse(name));
}

ResidualReport validate_minimal_surface(const MinimalSurfaceData& data, const SampleGrid& grid,
                                        double tolerance) {
  if (grid.empty()) throw Error(Errc::EmptyGrid, "validate_minimal_surface");
  ReportBuilder rb("minimal_surface", {"isothermal", "minimality", "harmonic_rho"});
  for (int i = 0; i < grid.ns; ++i) {
    for (int j = 0; j < grid.nt; ++j) {
      const auto [s, t] = grid.node(i, j);
      const SurfaceJet x = data.x(s, t);
      const RhoJet rho = data.rho(s, t);
      const double lam = r3_dot(x.x_s, x.x_s);
      const double iso = std::max(std::abs(lam - r3_dot(x.x_t, x.x_t)), std::abs(r3_dot(x.x_s, x.x_t))) / lam;
      const R3 lap{x.x_ss[0] + x.x_tt[0], x.x_ss[1] + x.x_tt[1], x.x_ss[2] + x.x_tt[2]};
      rb.add({iso, r3_norm(lap) / lam, std::abs(rho.rho_ss + rho.rho_tt) / lam}, {s, t, 0.0});
    }
  }
  return rb.finish(tolerance);
}

namespace {

SurfaceJet plane(double s, double t) { return {{s, t, 0.0}, {1, 0, 0}, {0, 1, 0}, {}, {}, {}}; }

SurfaceJet catenoid(double s, double t) {
  const double ch = std::cosh(t), sh = std::sinh(t), c = std::cos(s), sn = std::sin(s);
  return {{ch * c, ch * sn, t},        {-ch * sn, ch * c, 0.0},  {sh * c, sh * sn, 1.0},
          {-ch * c, -ch * sn, 0.0},    {-sh * sn, sh * c, 0.0},  {ch * c, ch * sn, 0.0}};
}

SurfaceJet helicoid(double s, double t) {
  const double ch = std::cosh(t), sh = std::sinh(t), c = std::cos(s), sn = std::sin(s);
  return {{sh * c, sh * sn, s},        {-sh * sn, sh * c, 1.0},  {ch * c, ch * sn, 0.0},
          {-sh * c, -sh * sn, 0.0},    {-ch * sn, ch * c, 0.0},  {sh * c, sh * sn, 0.0}};
}

SurfaceJet enneper(double u, double v) {
  return {{u - u * u * u / 3.0 + u * v * v, v - v * v * v / 3.0 + u * u * v, u * u - v * v},
          {1.0 - u * u + v * v, 2.0 * u * v, 2.0 * u},
          {2.0 * u * v, 1.0 - v * v + u * u, -2.0 * v},
          {-2.0 * u, 2.0 * v, 2.0},
          {2.0 * v, 2.0 * u, 0.0},
          {2.0 * u, -2.0 * v, -2.0}};
}

}  // namespace

MinimalSurfaceData minimal_surface(const std::string& name, RhoFn rho, std::string rho_label) {
  constexpr double pi = std::numbers::pi;
  MinimalSurfaceData d;
  d.name = name;
  d.rho = std::move(rho);
  d.rho_label = std::move(rho_label);
  if (name == "plane") {
    d.x = plane;
    d.domain = SampleGrid::rectangle(-1, 1, -1, 1, 17, 17);
  } else if (name == "catenoid") {
    d.x = catenoid;
    d.domain = SampleGrid::rectangle(-pi, pi, -1, 1, 25, 17);
  } else if (name == "helicoid") {
    d.x = helicoid;
    d.domain = SampleGrid::rectangle(-pi, pi, -1, 1, 25, 17);
  } else if (name == "enneper") {
    d.x = enneper;
    d.domain = SampleGrid::rectangle(-1, 1, -1, 1, 17, 17);
  } else {
    throw Error(Errc::BadParams, "unknown minimal surface '" + name + "'");
  }
  const ResidualReport check = validate_minimal_surface(d, d.domain);
  if (!check.pass) {
    throw Error(Errc::BadParams, name + " failed minimal-surface validation (max defect " +
                                     std::to_string(check.max_defect()) + ")");
  }
  return d;
}

}  // namespace ruledsl
