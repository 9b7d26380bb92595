#include "ruledsl/bryant.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "ruledsl/constructions.hpp"
#include "ruledsl/error.hpp"
#include "ruledsl/parallel.hpp"

namespace ruledsl {
namespace {

constexpr double kPanel = 0.02;

RhoFn trig_rho(double a, double b, bool cosine) {
  return [a, b, cosine](double s, double t) {
    const double x = a * s + b * t;
    const double f = cosine ? std::cos(x) : std::sin(x);
    const double df = cosine ? -std::sin(x) : std::cos(x);
    return RhoJet{f, a * df, b * df, -a * a * f, -a * b * f, -b * b * f};
  };
}

struct Gradient {
  CVec3 b_s, b_t;
};

Gradient gradient(const ConePatch& cone, const BryantRho& rho, double s, double t) {
  const ConeJet c = cone.jet(s, t);
  const RhoJet r = rho.rho(s, t);
  return {-r.rho_t * c.phi + r.rho * c.phi_t, r.rho_s * c.phi - r.rho * c.phi_s};
}

// Integral of b along the segment from a to a + d.
CVec3 segment(const ConePatch& cone, const BryantRho& rho, std::array<double, 2> a,
              std::array<double, 2> d) {
  const double len = std::hypot(d[0], d[1]);
  if (len == 0.0) return {};
  auto integrand = [&](double x) {
    const Gradient g = gradient(cone, rho, a[0] + x * d[0], a[1] + x * d[1]);
    return d[0] * g.b_s + d[1] * g.b_t;
  };
  auto simpson = [&](int m) {
    const double h = 1.0 / (2.0 * m);
    CVec3 acc = integrand(0.0) + integrand(1.0);
    for (int k = 1; k < 2 * m; ++k) acc += double(k % 2 == 1 ? 4 : 2) * integrand(k * h);
    return (h / 3.0) * acc;
  };
  const int m = std::max(2, int(std::ceil(len / (2.0 * kPanel))));
  return (16.0 * simpson(2 * m) - simpson(m)) / 15.0;
}

}  // namespace

BryantRho bryant_rho(const std::string& name) {
  if (name == "zero") return {name, [](double, double) { return RhoJet{}; }};
  if (name == "cos_s") return {name, trig_rho(1.0, 0.0, true)};
  if (name == "sin_s") return {name, trig_rho(1.0, 0.0, false)};
  if (name == "cos_t") return {name, trig_rho(0.0, 1.0, true)};
  if (name == "sin_t") return {name, trig_rho(0.0, 1.0, false)};
  if (name == "cos_2s") return {name, trig_rho(2.0, 0.0, true)};
  if (name.rfind("cos:", 0) == 0) {
    std::istringstream in(name.substr(4));
    double a = 0.0, b = 0.0;
    char comma = 0;
    if (in >> a >> comma >> b && comma == ',' && (in >> std::ws).eof()) {
      return {name, trig_rho(a, b, true)};
    }
  }
  throw Error(Errc::ConfigError, "unknown rho '" + name + "'");
}

ResidualReport bryant_closure(const ConePatch& cone, const BryantRho& rho, const SampleGrid& domain,
                              double tolerance) {
  if (domain.empty()) throw Error(Errc::EmptyGrid, "bryant domain");
  const int ns = domain.ns;
  const int nt = domain.nt;
  const std::size_t count = domain.node_count();
  std::vector<std::array<double, 3>> values(count);
  parallel_for(count, [&](std::size_t k) {
    const int i = int(k / std::size_t(nt));
    const int j = int(k % std::size_t(nt));
    const auto [s, t] = domain.node(i, j);
    const ConeJet c = cone.jet(s, t);
    const RhoJet r = rho.rho(s, t);
    const double lambda = cone.conformal_factor(s, t);
    const double eig = std::abs(r.rho_ss + r.rho_tt + 2.0 * lambda * r.rho);
    const double mixed = sup_norm((r.rho_ss + r.rho_tt) * c.phi - r.rho * (c.phi_ss + c.phi_tt));
    double loop = 0.0;
    // cell with lower-left corner at this node
    if (domain.closed || (i < ns - 1 && j < nt - 1)) {
      const auto p0 = domain.node(i, j);
      const auto p1 = domain.node(i + 1, j);
      const auto p3 = domain.node(i, j + 1);
      const std::array<double, 2> es{p1[0] - p0[0], p1[1] - p0[1]};
      const std::array<double, 2> et{p3[0] - p0[0], p3[1] - p0[1]};
      const CVec3 circ = segment(cone, rho, p0, es) + segment(cone, rho, p1, et) -
                         segment(cone, rho, p3, es) - segment(cone, rho, p0, et);
      loop = sup_norm(circ);
    }
    values[k] = {eig, mixed, loop};
  });
  ReportBuilder rb("bryant_closure", {"eigenfunction", "mixed_partial", "loop_integral"});
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < nt; ++j) {
      const auto [s, t] = domain.node(i, j);
      const auto& v = values[domain.index(i, j)];
      rb.add({v[0], v[1], v[2]}, {s, t, 0.0});
    }
  }
  return rb.finish(tolerance);
}

CVec3 bryant_potential(const ConePatch& cone, const BryantRho& rho, std::array<double, 2> base,
                       double s, double t, PathOrder order) {
  const double ds = s - base[0];
  const double dt = t - base[1];
  if (order == PathOrder::SFirst) {
    return segment(cone, rho, base, {ds, 0.0}) + segment(cone, rho, {s, base[1]}, {0.0, dt});
  }
  return segment(cone, rho, base, {0.0, dt}) + segment(cone, rho, {base[0], t}, {ds, 0.0});
}

RuledSurface bryant_twist(const ConePatch& cone, const BryantRho& rho, std::array<double, 2> basepoint,
                          const SampleGrid& domain, double tolerance) {
  const ResidualReport closure = bryant_closure(cone, rho, domain, tolerance);
  if (!closure.pass) {
    const ConditionStats& eig = closure.condition("eigenfunction");
    throw Error(Errc::NotClosed, "rho '" + rho.label + "' fails the eigenfunction condition (max " +
                                     std::to_string(eig.max) + ")");
  }
  auto jet = [cone, rho, basepoint](double s, double t) {
    const ConeJet c = cone.jet(s, t);
    const Gradient g = gradient(cone, rho, s, t);
    return RuledJet{c.phi, c.phi_s, c.phi_t, bryant_potential(cone, rho, basepoint, s, t), g.b_s, g.b_t};
  };
  Provenance prov{"bryant_twist",
                  {{"cone", cone.label()}, {"rho", rho.label}, {"basepoint", basepoint}, {"domain", domain}}};
  return RuledSurface(jet, prov);
}

RuledSurface combined_twist(const ConePatch& cone, const HoloField& w, const BryantRho& rho,
                            std::array<double, 2> basepoint, const SampleGrid& domain, double tolerance) {
  const RuledSurface lie = lie_twist(cone, w);
  const RuledSurface bry = bryant_twist(cone, rho, basepoint, domain, tolerance);
  auto jet = [lie, bry](double s, double t) {
    RuledJet j = lie.jet(s, t);
    const RuledJet k = bry.jet(s, t);
    j.psi += k.psi;
    j.psi_s += k.psi_s;
    j.psi_t += k.psi_t;
    return j;
  };
  nlohmann::json holo = nlohmann::json::array();
  for (const cplx& c : w.coeffs()) holo.push_back({c.real(), c.imag()});
  Provenance prov{"combined_twist",
                  {{"cone", cone.label()},
                   {"holo", holo},
                   {"rho", rho.label},
                   {"basepoint", basepoint},
                   {"domain", domain}}};
  return RuledSurface(jet, prov);
}

}  // namespace ruledsl
