#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "ruledsl/bryant.hpp"
#include "ruledsl/constructions.hpp"
#include "ruledsl/error.hpp"
#include "ruledsl/verify.hpp"

using namespace ruledsl;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ConfigError;
}

SampleGrid lattice_grid(const ConePatch& c, int n, std::vector<double> r = symmetric_r_values(0.5, 5.0, 3)) {
  return SampleGrid::over_lattice(*c.periods(), n, n, std::move(r));
}

double max_point_gap(const RuledSurface& a, const RuledSurface& b, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> st(-4.0, 4.0), rr(-10.0, 10.0);
  double worst = 0.0;
  for (int n = 0; n < samples; ++n) {
    const double r = rr(rng), s = st(rng), t = st(rng);
    worst = std::max(worst, oracle::sup(a.point(r, s, t) - b.point(r, s, t)));
  }
  return worst;
}

/// Surface jets against finite differences of the values.
double jet_vs_fd(const RuledSurface& surf, double s, double t) {
  const RuledJet j = surf.jet(s, t);
  auto phs = [&](double x) { return surf.jet(x, t).phi; };
  auto pht = [&](double y) { return surf.jet(s, y).phi; };
  auto pss = [&](double x) { return surf.jet(x, t).psi; };
  auto pst = [&](double y) { return surf.jet(s, y).psi; };
  return std::max({oracle::sup(oracle::derivative(phs, s) - j.phi_s), oracle::sup(oracle::derivative(pht, t) - j.phi_t),
                   oracle::sup(oracle::derivative(pss, s) - j.psi_s),
                   oracle::sup(oracle::derivative(pst, t) - j.psi_t)});
}

}  // namespace

TEST_CASE("holomorphic fields") {
  const HoloField p = HoloField::parse("1,2i,-3+0.5i");
  CHECK(p.degree() == 2);
  CHECK(std::abs(p.p(cplx(0.3, -0.7)) - (1.0 + 2.0 * I * cplx(0.3, -0.7) +
                                        cplx(-3, 0.5) * cplx(0.3, -0.7) * cplx(0.3, -0.7))) < 1e-14);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 0; n < 100; ++n) {
    const double s = u(rng), t = u(rng);
    const auto v = p.eval(s, t);
    CHECK(std::abs(v.u_s - v.v_t) < 1e-13);
    CHECK(std::abs(v.u_t + v.v_s) < 1e-13);
    const double h = 1e-5;
    const auto a = p.eval(s + h, t), b = p.eval(s - h, t);
    CHECK(std::abs((a.u - b.u) / (2 * h) - v.u_s) < 1e-8);
    CHECK(std::abs((a.v - b.v) / (2 * h) - v.v_s) < 1e-8);
  }
  CHECK(HoloField().is_zero());
  CHECK(HoloField::parse("0,0").is_zero());
  CHECK(HoloField::monomial(3).degree() == 3);
  CHECK(std::abs(parse_complex("1e-3-4i") - cplx(1e-3, -4.0)) < 1e-15);
  CHECK(code_of([] { parse_complex("1+"); }) == Errc::ConfigError);
  CHECK(code_of([] { HoloField::parse("x"); }) == Errc::ConfigError);
}

TEST_CASE("Lie twist: zero field gives the cone, constant field gives u phi_s + v phi_t") {
  const ConePatch c = hl_cone();
  const RuledSurface z = lie_twist(c, HoloField());
  CHECK(oracle::sup(z.jet(0.3, 0.4).psi) == 0.0);
  const RuledSurface k = lie_twist(c, HoloField::constant(2.0, -1.0));
  const ConeJet j = c.jet(0.3, 0.4);
  CHECK(oracle::sup(k.jet(0.3, 0.4).psi - (2.0 * j.phi_s - j.phi_t)) < 1e-15);
  REQUIRE(k.constant_twist().has_value());
  CHECK(k.constant_twist()->u == 2.0);
  CHECK(k.constant_twist()->v == -1.0);
  CHECK_FALSE(lie_twist(c, HoloField::monomial(2)).constant_twist().has_value());
  CHECK(jet_vs_fd(lie_twist(c, HoloField::parse("1,2,0.5i")), 0.2, -0.6) < 1e-8);
}

TEST_CASE("Harvey-Lawson twist examples") {
  const RuledSurface n = hl_twist(HoloField::monomial(2));
  // at s = t = 0, r = 1: all components equal 1/sqrt3
  const CVec3 x = n.point(1.0, 0.0, 0.0);
  for (std::size_t c = 0; c < 3; ++c) CHECK(std::abs(x[c] - 1.0 / std::sqrt(3.0)) < 1e-15);
  // psi vanishes at the zero of p, so the surface meets the cone there
  CHECK(oracle::sup(n.jet(0.0, 0.0).psi) == 0.0);
  CHECK(jet_vs_fd(n, 0.7, -0.2) < 1e-8);
  CHECK(jet_vs_fd(hl_twist(HoloField::monomial(3)), 0.7, -0.2) < 1e-8);
}

TEST_CASE("Harvey-Lawson twist agrees with the Lie twist of the cone") {
  for (int d : {0, 1, 2, 3}) {
    const HoloField p = HoloField::monomial(d, cplx(0.5, -0.25));
    CHECK(max_point_gap(hl_twist(p), lie_twist(hl_cone(), p), 10000, std::uint64_t(d)) <= 1e-10);
  }
}

TEST_CASE("closed-form torus twist agrees with the Lie twist of the elliptic cone") {
  for (auto params : {JoyceParams::make(-2, 1, 1), JoyceParams::make(-3, 2, 1)}) {
    const ConePatch c = joyce_cone(params);
    for (auto [u, v] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}, std::pair{0.3, -0.8}}) {
      CHECK(max_point_gap(joyce_twist(params, u, v), lie_twist(c, HoloField::constant(u, v)), 10000, 5) <= 1e-10);
    }
    CHECK(max_point_gap(joyce_twist(params, 0.0, 0.0), lie_twist(c, HoloField()), 1000, 6) <= 1e-12);
    CHECK(jet_vs_fd(joyce_twist(params, 0.4, 0.9), 0.3, 0.2) < 1e-8);
  }
}

TEST_CASE("twists are special Lagrangian") {
  const ConePatch hl = hl_cone();
  for (int d : {1, 2, 3}) CHECK(sl_defect(hl_twist(HoloField::monomial(d)), lattice_grid(hl, 24), 0.0).pass);
  for (auto params : {JoyceParams::make(-2, 1, 1), JoyceParams::make(-3, 2, 1)}) {
    const ConePatch c = joyce_cone(params);
    CHECK(sl_defect(joyce_twist(params, 1.0, 0.0), lattice_grid(c, 24), 0.0).pass);
    CHECK(sl_defect(joyce_twist(params, 0.0, 1.0), lattice_grid(c, 24), 0.0).pass);
    CHECK(sl_defect(lie_twist(c, HoloField::monomial(2)), lattice_grid(c, 24), 0.0).pass);
  }
  CHECK(sl_defect(lie_twist(hl, HoloField::monomial(2)), lattice_grid(hl, 24), 0.0).pass);
}

TEST_CASE("inverse twist") {
  // p = identity reproduces the direct twist
  CHECK(max_point_gap(hl_inverse_twist(HoloField::monomial(1)), hl_twist(HoloField::monomial(1)), 1000, 8) < 1e-12);
  const SampleGrid g = SampleGrid::rectangle(-0.5, 0.5, -0.5, 0.5, 17, 17, symmetric_r_values(0.5, 5.0, 3));
  CHECK(sl_defect(hl_inverse_twist(HoloField::monomial(2)), g, 0.0).pass);
  // p = 0 collapses the link to a point: phi is not an immersion
  const ResidualReport r = sl_defect(hl_inverse_twist(HoloField()), g, 0.0);
  CHECK(r.degenerate_direction_samples == g.node_count());
}

TEST_CASE("a twist violating Cauchy-Riemann is not special Lagrangian") {
  const ConePatch c = hl_cone();
  const RuledSurface bad(
      [c](double s, double t) {
        const ConeJet j = c.jet(s, t);
        RuledJet out{j.phi, j.phi_s, j.phi_t, s * s * j.phi_s, 2 * s * j.phi_s + s * s * j.phi_ss, s * s * j.phi_st};
        return out;
      },
      Provenance{"test", {}});
  CHECK(sl_defect(bad, lattice_grid(c, 24), 0.0).max_defect() > 1e-3);
}

TEST_CASE("minimal surface catalog") {
  for (std::string name : {"plane", "catenoid", "helicoid", "enneper"}) {
    const MinimalSurfaceData d = minimal_surface(name, harmonic_rho_named("s"), "s");
    CHECK(validate_minimal_surface(d, d.domain, 1e-9).pass);
  }
  CHECK(code_of([] { minimal_surface("torus", harmonic_rho_named("const"), "const"); }) == Errc::BadParams);
  const R3 c = r3_cross({1, 0, 0}, {0, 1, 0});
  CHECK(c == R3{0, 0, 1});
}

TEST_CASE("Borisenko construction") {
  SUBCASE("plane with constant rho is a real 3-plane") {
    const RuledSurface n = borisenko(minimal_surface("plane", harmonic_rho_named("const"), "const"));
    for (double s : {-0.5, 0.25})
      for (double t : {-0.3, 0.8}) {
        const CVec3 p = n.point(2.0, s, t);
        // the point set is R^2 x iR in the first, second and third slots
        CHECK(std::abs(p[0].imag()) < 1e-12);
        CHECK(std::abs(p[1].imag()) < 1e-12);
        CHECK(std::abs(p[2].real()) < 1e-12);
      }
    const SampleGrid g = SampleGrid::rectangle(-1, 1, -1, 1, 9, 9, {-1.0, 1.0});
    CHECK(sl_defect(n, g, 0.5 * kPi, 1e-12).pass);
  }
  SUBCASE("catalog surfaces with rho in {const, s} have phase pi/2") {
    for (std::string name : {"plane", "catenoid", "helicoid"}) {
      for (std::string rho : {"const", "s"}) {
        const MinimalSurfaceData d = minimal_surface(name, harmonic_rho_named(rho), rho);
        SampleGrid g = d.domain;
        g.r_values = symmetric_r_values(0.5, 5.0, 3);
        CHECK(sl_defect(borisenko(d), g, 0.5 * kPi, 1e-6).pass);
      }
    }
  }
  SUBCASE("orientation reversal gives the same point set") {
    const MinimalSurfaceData d = minimal_surface("catenoid", harmonic_rho_named("s"), "s");
    MinimalSurfaceData flipped = d;
    flipped.x = [x = d.x](double s, double t) {
      const SurfaceJet j = x(t, s);
      return SurfaceJet{j.x, j.x_t, j.x_s, j.x_tt, j.x_st, j.x_ss};
    };
    flipped.rho = [rho = d.rho](double s, double t) {
      const RhoJet j = rho(t, s);
      return RhoJet{j.rho, j.rho_t, j.rho_s, j.rho_tt, j.rho_st, j.rho_ss};
    };
    const RuledSurface a = borisenko(d), b = borisenko(flipped);
    for (double s : {-1.0, 0.5})
      for (double t : {-0.5, 0.7})
        for (double r : {-2.0, 0.0, 3.0}) CHECK(oracle::sup(a.point(r, s, t) - b.point(-r, t, s)) < 1e-9);
  }
  SUBCASE("degenerate parametrization") {
    MinimalSurfaceData d = minimal_surface("plane", harmonic_rho_named("const"), "const");
    d.x = [](double s, double) { return SurfaceJet{{s, 0, 0}, {1, 0, 0}, {0, 0, 0}, {}, {}, {}}; };
    CHECK(code_of([&] { borisenko(d).jet(0.1, 0.2); }) == Errc::DegenerateParametrization);
  }
}

TEST_CASE("Bryant twist") {
  const ConePatch c = hl_cone();
  const SampleGrid dom = SampleGrid::rectangle(-1, 1, -1, 1, 9, 9);
  SUBCASE("zero rho gives zero offset") {
    const RuledSurface n = bryant_twist(c, bryant_rho("zero"), {0, 0}, dom);
    CHECK(oracle::sup(n.jet(0.4, -0.3).psi) == 0.0);
  }
  SUBCASE("cos s is an eigenfunction and produces a special Lagrangian") {
    CHECK(bryant_closure(c, bryant_rho("cos_s"), dom).pass);
    const RuledSurface n = bryant_twist(c, bryant_rho("cos_s"), {0, 0}, dom);
    SampleGrid g = dom;
    g.r_values = symmetric_r_values(0.5, 5.0, 3);
    CHECK(sl_defect(n, g, 0.0, 1e-8).pass);
    // b(basepoint) = 0 and db matches the one-form
    CHECK(oracle::sup(n.jet(0.0, 0.0).psi) < 1e-15);
    const ConeJet j = c.jet(0.3, 0.2);
    const RhoJet r = bryant_rho("cos_s").rho(0.3, 0.2);
    CHECK(oracle::sup(n.jet(0.3, 0.2).psi_s - (-r.rho_t * j.phi + r.rho * j.phi_t)) < 1e-14);
  }
  SUBCASE("cos 2s is not closed") {
    const ResidualReport r = bryant_closure(c, bryant_rho("cos_2s"), dom);
    CHECK_FALSE(r.pass);
    CHECK(r.condition("eigenfunction").max > 1e-3);
    CHECK(code_of([&] { bryant_twist(c, bryant_rho("cos_2s"), {0, 0}, dom); }) == Errc::NotClosed);
  }
  SUBCASE("potential is path independent") {
    for (auto name : {"cos_s", "sin_t", "cos:0.5,0.8660254037844386"}) {
      const BryantRho rho = bryant_rho(name);
      const CVec3 a = bryant_potential(c, rho, {0, 0}, 0.8, -0.6, PathOrder::SFirst);
      const CVec3 b = bryant_potential(c, rho, {0, 0}, 0.8, -0.6, PathOrder::TFirst);
      CHECK(oracle::sup(a - b) < 1e-10);
    }
  }
  SUBCASE("combined twist") {
    const RuledSurface n = combined_twist(c, HoloField::constant(1.0, 0.0), bryant_rho("cos_s"), {0, 0}, dom);
    SampleGrid g = dom;
    g.r_values = symmetric_r_values(0.5, 5.0, 3);
    CHECK(sl_defect(n, g, 0.0, 1e-9).pass);
    const RuledSurface zero_w = combined_twist(c, HoloField(), bryant_rho("cos_s"), {0, 0}, dom);
    const RuledSurface b = bryant_twist(c, bryant_rho("cos_s"), {0, 0}, dom);
    CHECK(oracle::sup(zero_w.jet(0.5, 0.5).psi - b.jet(0.5, 0.5).psi) < 1e-15);
  }
  CHECK(code_of([] { bryant_rho("cos"); }) == Errc::ConfigError);
}

TEST_CASE("gauge fixing") {
  const ConePatch c = hl_cone();
  const RuledSurface multiple(
      [c](double s, double t) {
        const ConeJet j = c.jet(s, t);
        return RuledJet{j.phi, j.phi_s, j.phi_t, 3.0 * j.phi, 3.0 * j.phi_s, 3.0 * j.phi_t};
      },
      Provenance{"test", {}});
  CHECK(oracle::sup(gauge_fix(multiple).jet(0.2, 0.9).psi) < 1e-15);

  const RuledSurface twist = hl_twist(HoloField::monomial(2));
  const RuledSurface fixed = gauge_fix(twist);
  const RuledSurface twice = gauge_fix(fixed);
  for (double s : {-0.7, 0.3})
    for (double t : {0.1, 1.2}) {
      CHECK(std::abs(metric_g(fixed.jet(s, t).phi, fixed.jet(s, t).psi)) < 1e-14);
      CHECK(oracle::sup(twice.jet(s, t).psi - fixed.jet(s, t).psi) < 1e-15);
    }
  CHECK(fixed.provenance().op == "gauge_fix");
  CHECK(fixed.provenance().params["base"]["op"] == "hl_twist");
}

TEST_CASE("linearity: superposed twists stay special Lagrangian") {
  const ConePatch c = hl_cone();
  const RuledSurface a = lie_twist(c, HoloField::monomial(2));
  const RuledSurface b = lie_twist(c, HoloField::constant(0.0, 1.0));
  CHECK(sl_defect(superpose(a, 2.0, b, -0.5), lattice_grid(c, 16), 0.0).pass);
}
