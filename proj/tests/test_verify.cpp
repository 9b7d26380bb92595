#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ruledsl/constructions.hpp"
#include "ruledsl/error.hpp"
#include "ruledsl/verify.hpp"

using namespace ruledsl;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ConfigError;
}

const SampleGrid kPatch = SampleGrid::rectangle(-1, 1, -1, 1, 9, 9, symmetric_r_values(0.5, 5.0, 3));

SampleGrid hl_cell(int n, std::vector<double> r = {}) {
  return SampleGrid::over_lattice(*hl_cone().periods(), n, n, std::move(r));
}

/// The real 3-plane through the origin swept by the unit sphere of R^3 in
/// Mercator coordinates, with a real offset: psi in R^3 keeps every frame real.
RuledSurface real_ruled_plane() {
  auto jet = [](double s, double t) {
    const double sech = 1.0 / std::cosh(t), th = std::tanh(t);
    RuledJet j;
    j.phi = CVec3{{std::cos(s) * sech, std::sin(s) * sech, th}};
    j.phi_s = CVec3{{-std::sin(s) * sech, std::cos(s) * sech, 0.0}};
    j.phi_t = CVec3{{-std::cos(s) * sech * th, -std::sin(s) * sech * th, sech * sech}};
    j.psi = CVec3{{s * s, t, s * t}};
    j.psi_s = CVec3{{2 * s, 0.0, t}};
    j.psi_t = CVec3{{0.0, 1.0, s}};
    return j;
  };
  return RuledSurface(jet, Provenance{"real_plane", {}});
}

}  // namespace

TEST_CASE("sl_defect examples") {
  CHECK(sl_defect(hl_twist(HoloField::monomial(2)), kPatch, 0.0).max_defect() < 1e-9);
  CHECK(sl_defect(borisenko(minimal_surface("catenoid", harmonic_rho_named("s"), "s")), kPatch, 0.5 * kPi, 1e-6).pass);
  CHECK(sl_defect(real_ruled_plane(), kPatch, 0.0, 1e-12).pass);
  CHECK(code_of([] { sl_defect(hl_twist(HoloField()), SampleGrid{}, 0.0); }) == Errc::EmptyGrid);

  std::vector<SlSample> dump;
  const ResidualReport r = sl_defect(hl_twist(HoloField::monomial(1)), kPatch, 0.0, 1e-9, &dump);
  CHECK(dump.size() == kPatch.node_count() * kPatch.r_values.size());
  CHECK(r.samples + r.non_immersion_samples == dump.size());
  CHECK(r.pass == (r.max_defect() < r.tolerance));
  for (const auto& c : r.conditions) CHECK(c.max >= c.mean);
}

TEST_CASE("empty r list uses r = 1") {
  SampleGrid g = kPatch;
  g.r_values.clear();
  std::vector<SlSample> dump;
  sl_defect(hl_twist(HoloField::monomial(2)), g, 0.0, 1e-9, &dump);
  REQUIRE_FALSE(dump.empty());
  for (const auto& s : dump) CHECK(s.r == 1.0);
}

TEST_CASE("a Cauchy-Riemann violating twist fails") {
  const ConePatch c = hl_cone();
  const RuledSurface bad(
      [c](double s, double t) {
        const ConeJet j = c.jet(s, t);
        return RuledJet{j.phi, j.phi_s, j.phi_t, s * s * j.phi_s, 2 * s * j.phi_s + s * s * j.phi_ss, s * s * j.phi_st};
      },
      Provenance{"test", {}});
  const ResidualReport r = sl_defect(bad, kPatch, 0.0);
  CHECK_FALSE(r.pass);
  CHECK(r.max_defect() > 1e-3);
}

TEST_CASE("defect invariance under SU(3), gauge and scale") {
  const RuledSurface base = hl_twist(HoloField::monomial(2));
  const SampleGrid g = hl_cell(16, symmetric_r_values(0.5, 5.0, 3));
  std::vector<SlSample> a, b, c;
  sl_defect(base, g, 0.0, 1e-9, &a);
  sl_defect(transformed(base, random_su3(3)), g, 0.0, 1e-9, &b);
  sl_defect(gauge_fix(base), g, 0.0, 1e-9, &c);
  // gauge fixing moves the r parameter along each line, so compare the summary
  REQUIRE(a.size() == b.size());
  double su3 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    su3 = std::max({su3, std::abs(a[k].lagrangian - b[k].lagrangian), std::abs(a[k].special - b[k].special)});
  CHECK(su3 < 1e-10);
  CHECK(std::abs(sl_defect(base, g, 0.0).max_defect() - sl_defect(gauge_fix(base), g, 0.0).max_defect()) < 1e-10);

  // a non-special surface keeps its defect under rotation too
  const RuledSurface bent = superpose(base, 1.0, lie_twist(perturbed_cone(hl_cone(), oracle::unit(1, 0.2)), HoloField::monomial(1)), 1.0);
  const double d0 = sl_defect(bent, g, 0.0).max_defect();
  const double d1 = sl_defect(transformed(bent, random_su3(4)), g, 0.0).max_defect();
  CHECK(d0 > 1e-3);
  CHECK(std::abs(d0 - d1) < 1e-10);

  // scaling (phi, psi) -> (phi, c psi) with r -> c r is a dilation of C^3
  SampleGrid scaled = g;
  for (double& r : scaled.r_values) r *= 1000.0;
  const RuledSurface big = superpose(bent, 1000.0, bent, 0.0);
  CHECK(std::abs(sl_defect(big, scaled, 0.0).max_defect() - d0) < 1e-10);
}

TEST_CASE("phase estimation") {
  const PhaseEstimate hl = estimate_phase(hl_twist(HoloField::monomial(2)), kPatch);
  CHECK(std::min(hl.angle, kPi - hl.angle) < 1e-9);
  CHECK(hl.dispersion < 1e-8);
  const PhaseEstimate plane = estimate_phase(borisenko(minimal_surface("plane", harmonic_rho_named("const"), "const")), kPatch);
  CHECK(std::abs(plane.angle - 0.5 * kPi) < 1e-9);

  // e^{i theta / 3} times a phase-0 surface has phase theta
  const double theta = 1.2;
  Su3 rot = Su3::Identity() * std::exp(cplx(0, theta / 3.0));
  const PhaseEstimate turned = estimate_phase(transformed(hl_twist(HoloField::monomial(1)), rot), kPatch);
  CHECK(std::abs(turned.angle - theta) < 1e-9);

  const RuledSurface generic(
      [](double s, double t) {
        const ConeJet j = hl_cone().jet(s, t);
        const cplx i(0, 1);
        return RuledJet{j.phi, j.phi_s, j.phi_t, CVec3{{std::sin(3 * s), i * std::cos(2 * t), s * t}},
                        CVec3{{3 * std::cos(3 * s), 0.0, t}}, CVec3{{0.0, -2.0 * i * std::sin(2 * t), s}}};
      },
      Provenance{"test", {}});
  CHECK(estimate_phase(generic, kPatch).dispersion > 1e-3);

  const RuledSurface constant([](double, double) { return RuledJet{oracle::unit(0), {}, {}, oracle::unit(1), {}, {}}; },
                              Provenance{"test", {}});
  CHECK(code_of([&] { estimate_phase(constant, kPatch); }) == Errc::AllDegenerate);
}

TEST_CASE("ruling classification") {
  const SampleGrid g = SampleGrid::rectangle(-1, 1, -1, 1, 9, 9, {1.0});
  const RulingClass lie = classify_ruling(lie_twist(hl_cone(), HoloField::monomial(2)), g);
  CHECK(lie.verdict == RulingVerdict::CaseI);
  CHECK(lie.case_i_f_residual < 1e-9);
  CHECK(lie.case_ii_span > 1e-3);
  const auto joyce = JoyceParams::make(-3, 2, 1);
  CHECK(classify_ruling(lie_twist(joyce_cone(joyce), HoloField::constant(0, 1)), g).verdict == RulingVerdict::CaseI);

  const RulingClass plane = classify_ruling(real_ruled_plane(), g);
  CHECK(plane.verdict == RulingVerdict::CaseII);
  CHECK(plane.planar);
  CHECK(plane.planarity < 1e-9);
  CHECK(to_string(RulingVerdict::CaseII) == "Case-ii");

  const RulingClass cone = classify_ruling(hl_twist(HoloField()), g);
  CHECK(cone.verdict == RulingVerdict::Both);
}

TEST_CASE("asymptotic order") {
  const auto rs = geometric_r_values(1e2, 1e6, 4);
  const SampleGrid g = hl_cell(16);
  SUBCASE("constant twists of both cones decay like 1/r") {
    for (auto [u, v] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}}) {
      const AsymptoticFit hl = asymptotic_order(hl_cone(), lie_twist(hl_cone(), HoloField::constant(u, v)), g, rs);
      CHECK(std::abs(hl.slope + 1.0) < 0.05);
      const auto p = JoyceParams::make(-2, 1, 1);
      const ConePatch c = joyce_cone(p);
      const SampleGrid gj = SampleGrid::over_lattice(*c.periods(), 16, 16);
      const AsymptoticFit j = asymptotic_order(c, joyce_twist(p, u, v), gj, rs);
      CHECK(std::abs(j.slope + 1.0) < 0.05);
      const AsymptoticFit doubled = asymptotic_order(c, joyce_twist(p, u, v), gj, geometric_r_values(1e2, 2e6, 4));
      CHECK(std::abs(doubled.slope - j.slope) <= 0.02);
    }
  }
  SUBCASE("zero twist is exact") {
    const AsymptoticFit f = asymptotic_order(hl_cone(), lie_twist(hl_cone(), HoloField()), g, rs);
    CHECK(f.exact);
  }
  SUBCASE("errors") {
    CHECK(code_of([&] { asymptotic_order(hl_cone(), hl_twist(HoloField::monomial(2)), g, rs); }) == Errc::BadFamily);
    CHECK(code_of([&] { asymptotic_order(hl_cone(), lie_twist(hl_cone(), HoloField::constant(1, 0)), g, {10.0}); }) ==
          Errc::BadRange);
  }
}

TEST_CASE("bounded distance from the cone") {
  const SampleGrid g = SampleGrid::rectangle(-1, 1, -1, 1, 9, 9, {-100, -1, 0, 1, 100});
  CHECK(bounded_distance_check(hl_twist(HoloField::monomial(2)), g).pass);
  CHECK(bounded_distance_check(gauge_fix(lie_twist(hl_cone(), HoloField::constant(1, 1))), g).pass);
}
