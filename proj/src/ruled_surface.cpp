#include "ruledsl/ruled_surface.hpp"

namespace ruledsl {

RuledSurface::RuledSurface(JetFn jet, Provenance provenance)
    : jet_(std::move(jet)), provenance_(std::move(provenance)) {}

CVec3 RuledSurface::point(double r, double s, double t) const {
  const RuledJet j = jet_(s, t);
  return r * j.phi + j.psi;
}

RuledJet finite_difference_jet(const RuledValueFn& values, double s, double t, double h) {
  auto central = [&](double ds, double dt, double step) {
    const auto plus = values(s + ds * step, t + dt * step);
    const auto minus = values(s - ds * step, t - dt * step);
    return std::pair{(plus.first - minus.first) / (2.0 * step),
                     (plus.second - minus.second) / (2.0 * step)};
  };
  auto richardson = [&](double ds, double dt) {
    const auto coarse = central(ds, dt, h);
    const auto fine = central(ds, dt, 0.5 * h);
    return std::pair{(4.0 * fine.first - coarse.first) / 3.0,
                     (4.0 * fine.second - coarse.second) / 3.0};
  };
  const auto [phi, psi] = values(s, t);
  const auto ds = richardson(1.0, 0.0);
  const auto dt = richardson(0.0, 1.0);
  return RuledJet{phi, ds.first, dt.first, psi, ds.second, dt.second};
}

RuledSurface surface_from_values(RuledValueFn values, Provenance provenance, double h) {
  auto jet = [values = std::move(values), h](double s, double t) {
    return finite_difference_jet(values, s, t, h);
  };
  return RuledSurface(jet, std::move(provenance));
}

RuledSurface transformed(const RuledSurface& surf, const Su3& a) {
  auto jet = [surf, a](double s, double t) {
    const RuledJet j = surf.jet(s, t);
    return RuledJet{apply(a, j.phi), apply(a, j.phi_s), apply(a, j.phi_t),
                    apply(a, j.psi), apply(a, j.psi_s), apply(a, j.psi_t)};
  };
  Provenance p{"transformed", {{"base", nlohmann::json(surf.provenance())}}};
  return RuledSurface(jet, p).with_r_range(surf.r_range()[0], surf.r_range()[1]);
}

RuledSurface superpose(const RuledSurface& first, double a, const RuledSurface& second, double b) {
  auto jet = [first, second, a, b](double s, double t) {
    RuledJet j = first.jet(s, t);
    const RuledJet k = second.jet(s, t);
    j.psi = a * j.psi + b * k.psi;
    j.psi_s = a * j.psi_s + b * k.psi_s;
    j.psi_t = a * j.psi_t + b * k.psi_t;
    return j;
  };
  Provenance p{"superpose",
               {{"a", a}, {"b", b}, {"first", nlohmann::json(first.provenance())}, {"second", nlohmann::json(second.provenance())}}};
  return RuledSurface(jet, p);
}

}  // namespace ruledsl
