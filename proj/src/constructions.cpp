#include "ruledsl/constructions.hpp"

#include <cmath>
#include <numbers>

#include "ruledsl/elliptic.hpp"
#include "ruledsl/error.hpp"

namespace ruledsl {
namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
const cplx kI(0.0, 1.0);

nlohmann::json coeffs_json(const HoloField& w) {
  nlohmann::json out = nlohmann::json::array();
  for (const cplx& c : w.coeffs()) out.push_back({c.real(), c.imag()});
  return out;
}

std::optional<ConstantTwist> constant_of(const HoloField& w) {
  if (!w.is_constant()) return std::nullopt;
  const cplx c = w.is_zero() ? cplx(0.0) : w.coeffs().front();
  return ConstantTwist{c.real(), c.imag()};
}

// The Harvey-Lawson phases are theta_j = alpha_j s + beta_j t.
constexpr std::array<double, 3> kAlpha{1.0, -0.5, -0.5};
constexpr std::array<double, 3> kBeta{0.0, -0.5 * kSqrt3, 0.5 * kSqrt3};

}  // namespace

RuledSurface lie_twist(const ConePatch& cone, const HoloField& w) {
  auto jet = [cone, w](double s, double t) {
    const ConeJet c = cone.jet(s, t);
    const HoloField::Value f = w.eval(s, t);
    RuledJet j;
    j.phi = c.phi;
    j.phi_s = c.phi_s;
    j.phi_t = c.phi_t;
    j.psi = f.u * c.phi_s + f.v * c.phi_t;
    j.psi_s = f.u_s * c.phi_s + f.u * c.phi_ss + f.v_s * c.phi_t + f.v * c.phi_st;
    j.psi_t = f.u_t * c.phi_s + f.u * c.phi_st + f.v_t * c.phi_t + f.v * c.phi_tt;
    return j;
  };
  Provenance p{"lie_twist", {{"cone", cone.label()}, {"holo", coeffs_json(w)}}};
  RuledSurface surf(jet, p);
  if (auto c = constant_of(w)) surf.with_constant_twist(*c);
  return surf;
}

RuledSurface hl_twist(const HoloField& p) {
  auto jet = [p](double s, double t) {
    const HoloField::Value f = p.eval(s, t);
    RuledJet j;
    for (std::size_t c = 0; c < 3; ++c) {
      const double a = kAlpha[c];
      const double b = kBeta[c];
      const cplx e = std::exp(kI * (a * s + b * t)) / kSqrt3;
      // amplitude r + i (a u + b v); the r-free part is the offset
      const double lin = a * f.u + b * f.v;
      j.phi[c] = e;
      j.phi_s[c] = kI * a * e;
      j.phi_t[c] = kI * b * e;
      j.psi[c] = kI * lin * e;
      j.psi_s[c] = kI * e * (kI * a * lin + a * f.u_s + b * f.v_s);
      j.psi_t[c] = kI * e * (kI * b * lin + a * f.u_t + b * f.v_t);
    }
    return j;
  };
  Provenance prov{"hl_twist", {{"holo", coeffs_json(p)}}};
  RuledSurface surf(jet, prov);
  if (auto c = constant_of(p)) surf.with_constant_twist(*c);
  return surf;
}

RuledSurface hl_inverse_twist(const HoloField& p) {
  auto jet = [p](double u, double v) {
    // s + it = p(u + iv); s_u = Re p', t_u = Im p', s_v = -Im p', t_v = Re p'
    const HoloField::Value st = p.eval(u, v);
    RuledJet j;
    for (std::size_t c = 0; c < 3; ++c) {
      const double a = kAlpha[c];
      const double b = kBeta[c];
      const cplx e = std::exp(kI * (a * st.u + b * st.v)) / kSqrt3;
      const double dtheta_u = a * st.u_s + b * st.v_s;
      const double dtheta_v = a * st.u_t + b * st.v_t;
      const double lin = a * u + b * v;
      j.phi[c] = e;
      j.phi_s[c] = kI * dtheta_u * e;
      j.phi_t[c] = kI * dtheta_v * e;
      j.psi[c] = kI * lin * e;
      j.psi_s[c] = kI * e * (kI * dtheta_u * lin + a);
      j.psi_t[c] = kI * e * (kI * dtheta_v * lin + b);
    }
    return j;
  };
  Provenance prov{"hl_inverse_twist", {{"holo", coeffs_json(p)}}};
  return RuledSurface(jet, prov);
}

RuledSurface joyce_twist(const JoyceParams& in, double u, double v) {
  const JoyceParams p = JoyceParams::make(in.b1, in.b2, in.b3);
  const std::array<double, 3> b{double(p.b1), double(p.b2), double(p.b3)};
  const std::array<double, 3> amp{std::sqrt(b[1] / (b[1] - b[0])), std::sqrt(b[0] / (b[0] - b[1])),
                                  std::sqrt(b[0] / (b[0] - b[2]))};
  const double a = p.a;
  const double k = p.b;
  auto jet = [b, amp, a, k, u, v](double s, double t) {
    const EllipticTriple e = jacobi(a * t, k);
    const double k2 = k * k;
    const double sn = e.sn, cn = e.cn, dn = e.dn;
    // N_j = C_j e^{i b_j s} ((ir - u b_j) E_j - i v a D_j)
    const std::array<double, 3> E{dn, cn, sn};
    const std::array<double, 3> dE{-k2 * sn * cn, -sn * dn, cn * dn};
    const std::array<double, 3> D{k2 * sn * cn, sn * dn, -cn * dn};
    const std::array<double, 3> dD{k2 * dn * (cn * cn - sn * sn), cn * (dn * dn - k2 * sn * sn),
                                   sn * (dn * dn + k2 * cn * cn)};
    RuledJet j;
    for (std::size_t c = 0; c < 3; ++c) {
      const cplx w = amp[c] * std::exp(kI * (b[c] * s));
      j.phi[c] = kI * w * E[c];
      j.phi_s[c] = kI * b[c] * j.phi[c];
      j.phi_t[c] = kI * w * (a * dE[c]);
      j.psi[c] = w * (-u * b[c] * E[c] - kI * (v * a * D[c]));
      j.psi_s[c] = kI * b[c] * j.psi[c];
      j.psi_t[c] = w * (-u * b[c] * a * dE[c] - kI * (v * a * a * dD[c]));
    }
    return j;
  };
  Provenance prov{"joyce_twist", {{"b", {p.b1, p.b2, p.b3}}, {"u", u}, {"v", v}}};
  return RuledSurface(jet, prov).with_constant_twist({u, v});
}

RuledSurface borisenko(const MinimalSurfaceData& data) {
  auto values = [data](double s, double t) {
    const SurfaceJet x = data.x(s, t);
    const RhoJet rho = data.rho(s, t);
    const R3 nx = r3_cross(x.x_s, x.x_t);
    const double area = r3_norm(nx);
    if (area < 1e-12) {
      throw Error(Errc::DegenerateParametrization, "|x_s x x_t| < 1e-12 on " + data.name);
    }
    const R3 n{nx[0] / area, nx[1] / area, nx[2] / area};
    const R3 grad{(rho.rho_s * x.x_t[0] - rho.rho_t * x.x_s[0]) / area,
                  (rho.rho_s * x.x_t[1] - rho.rho_t * x.x_s[1]) / area,
                  (rho.rho_s * x.x_t[2] - rho.rho_t * x.x_s[2]) / area};
    const R3 p = r3_cross(grad, n);
    CVec3 phi, psi;
    for (std::size_t c = 0; c < 3; ++c) {
      phi[c] = cplx(0.0, n[c]);
      psi[c] = cplx(x.x[c], p[c]);
    }
    return std::pair{phi, psi};
  };
  Provenance prov{"borisenko", {{"surface", data.name}, {"rho", data.rho_label}}};
  return surface_from_values(values, prov);
}

RuledSurface gauge_fix(const RuledSurface& surf) {
  auto jet = [surf](double s, double t) {
    RuledJet j = surf.jet(s, t);
    const double alpha = metric_g(j.phi, j.psi);
    const double alpha_s = metric_g(j.phi_s, j.psi) + metric_g(j.phi, j.psi_s);
    const double alpha_t = metric_g(j.phi_t, j.psi) + metric_g(j.phi, j.psi_t);
    j.psi_s = j.psi_s - alpha_s * j.phi - alpha * j.phi_s;
    j.psi_t = j.psi_t - alpha_t * j.phi - alpha * j.phi_t;
    j.psi = j.psi - alpha * j.phi;
    return j;
  };
  Provenance prov{"gauge_fix", {{"base", nlohmann::json(surf.provenance())}}};
  RuledSurface out(jet, prov);
  out.with_r_range(surf.r_range()[0], surf.r_range()[1]);
  return out;
}

}  // namespace ruledsl
