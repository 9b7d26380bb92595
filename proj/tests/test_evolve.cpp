#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ruledsl/error.hpp"
#include "ruledsl/evolve.hpp"
#include "ruledsl/spectral.hpp"
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

/// Largest deviation of (phi, psi) from the Harvey-Lawson Lie twist w = d/ds at time state.t.
double hl_error(const CurveState& st) {
  const ConePatch c = hl_cone();
  const auto s = st.nodes();
  double e = 0.0;
  for (std::size_t j = 0; j < st.n(); ++j) {
    const ConeJet k = c.jet(s[j], st.t);
    e = std::max({e, oracle::sup(st.phi[j] - k.phi), oracle::sup(st.psi[j] - k.phi_s)});
  }
  return e;
}

/// A closed line of the (-3, 2, 1) cone along the lattice vector g1 + 2 g2.
/// Rotating conformal coordinates keeps the evolution equation, so the exact
/// solution at time tau is phi(sigma d + tau d_perp).
struct RotatedLine {
  ConePatch cone = joyce_cone(JoyceParams::make(-3, 2, 1));
  std::array<double, 2> d{}, d_perp{};
  double length = 0.0;

  RotatedLine() {
    const Lattice& l = *cone.periods();
    const double gs = l.g1[0] + 2 * l.g2[0], gt = l.g1[1] + 2 * l.g2[1];
    length = std::hypot(gs, gt);
    d = {gs / length, gt / length};
    d_perp = {-d[1], d[0]};
  }
  std::pair<CVec3, CVec3> exact(double sigma, double tau) const {
    const ConeJet k = cone.jet(sigma * d[0] + tau * d_perp[0], sigma * d[1] + tau * d_perp[1]);
    return {k.phi, d[0] * k.phi_s + d[1] * k.phi_t};
  }
  double error(const CurveState& st) const {
    const auto s = st.nodes();
    double e = 0.0;
    for (std::size_t j = 0; j < st.n(); ++j) {
      const auto [phi, psi] = exact(s[j], st.t);
      e = std::max({e, oracle::sup(st.phi[j] - phi), oracle::sup(st.psi[j] - psi)});
    }
    return e;
  }
};

}  // namespace

TEST_CASE("spectral differentiation") {
  const std::size_t n = 16;
  PeriodicDifferentiator d(n, 2 * kPi);
  std::vector<cplx> f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = std::exp(cplx(0, 3.0 * 2 * kPi * j / n)) + std::cos(2 * kPi * j / n);
  const auto df = d.derivative(f);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = 2 * kPi * j / n;
    CHECK(std::abs(df[j] - (cplx(0, 3) * std::exp(cplx(0, 3 * x)) - std::sin(x))) < 1e-13);
  }
  ChebyshevDifferentiator cd(12, -1.0, 2.0);
  std::vector<cplx> g(12), dg(12);
  for (std::size_t j = 0; j < 12; ++j) g[j] = std::pow(cd.nodes()[j], 5);
  cd.derivative(g, dg);
  for (std::size_t j = 0; j < 12; ++j) CHECK(std::abs(dg[j] - 5 * std::pow(cd.nodes()[j], 4)) < 1e-10);
  CHECK(std::abs(chebyshev_interpolate(g, -1.0, 2.0, 0.3) - std::pow(0.3, 5)) < 1e-13);
}

TEST_CASE("sampling and validation of initial data") {
  CHECK(code_of([] { hl_initial_state(100); }) == Errc::BadParams);
  CHECK(code_of([] { hl_initial_state(2); }) == Errc::BadParams);
  const CurveState st = hl_initial_state(64, true);
  CHECK(st.length() == doctest::Approx(4 * kPi));
  CHECK(validate_initial(st).pass);

  auto bad = [](double s) {
    const cplx e = std::exp(cplx(0, s)) / std::sqrt(2.0);
    return std::pair{CVec3{{e, e, 0.0}}, CVec3{}};
  };
  const CurveState b = sample_curve(bad, 64, 0.0, 2 * kPi);
  const ResidualReport r = validate_initial(b);
  CHECK_FALSE(r.pass);
  CHECK(r.condition("omega_phi_dphi").max > 0.5);
  CHECK(code_of([&] { evolve(b, 0.1, 0.01); }) == Errc::InvalidInitialData);
}

TEST_CASE("zero time and zero step leave the state unchanged") {
  const CurveState st = hl_initial_state(32, true);
  const CurveState same = evolve(st, st.t, 0.01);
  CHECK(same.phi == st.phi);
  CHECK(same.psi == st.psi);
  const CurveState zero = step(st, 0.0);
  CHECK(zero.phi == st.phi);
  CHECK(code_of([&] { evolve(st, 0.1, 0.0); }) == Errc::BadRange);
  CHECK(code_of([&] { evolve_to_surface(st, 0.0, 0.01); }) == Errc::BadRange);
}

TEST_CASE("Harvey-Lawson evolution reproduces the closed form") {
  std::vector<CurveDiagnostics> log;
  const CurveState end = evolve(hl_initial_state(128, true), 0.25, 1e-3, {}, &log);
  CHECK(end.t == 0.25);
  CHECK(hl_error(end) < 1e-6);
  CHECK(log.size() == 251u);
  double drift = 0.0, constraint = 0.0;
  for (const auto& d : log) {
    drift = std::max(drift, d.norm_drift);
    constraint = std::max({constraint, d.omega_phi, d.omega_psi});
  }
  CHECK(drift < 1e-8);
  CHECK(constraint < 1e-7);
}

TEST_CASE("zero offset stays zero") {
  const CurveState end = evolve(hl_initial_state(32, false), 0.1, 1e-2);
  for (const auto& p : end.psi) CHECK(oracle::sup(p) == 0.0);
}

TEST_CASE("spectral convergence in n") {
  const RotatedLine line;
  CHECK(line.length == doctest::Approx(8.0172).epsilon(1e-4));
  auto run = [&](std::size_t n) {
    const CurveState st = sample_curve([&](double s) { return line.exact(s, 0.0); }, n, 0.0, line.length);
    // the coarse grid's own truncation error exceeds the default admission tolerance
    EvolveOptions opts;
    opts.initial_tolerance = 1e-2;
    return line.error(evolve(st, 0.05, 1e-4, opts));
  };
  const double e32 = run(32), e64 = run(64);
  MESSAGE("n=32 error " << e32 << ", n=64 error " << e64);
  CHECK(e32 > 1e-12);
  CHECK(e64 <= 0.1 * e32);
}

TEST_CASE("fourth-order convergence in dt") {
  auto run = [](double dt) { return hl_error(evolve(hl_initial_state(32, true), 1.0, dt)); };
  const double e1 = run(0.05), e2 = run(0.025);
  const double order = std::log2(e1 / e2);
  MESSAGE("errors " << e1 << ", " << e2 << ", order " << order);
  CHECK(order >= 3.5);
  CHECK(order <= 4.5);
}

TEST_CASE("evolution is bitwise deterministic") {
  const CurveState a = evolve(hl_initial_state(64, true), 0.1, 1e-3);
  const CurveState b = evolve(hl_initial_state(64, true), 0.1, 1e-3);
  CHECK(a.phi == b.phi);
  CHECK(a.psi == b.psi);
}

TEST_CASE("blow-up is reported") {
  const CurveState st = hl_initial_state(128, true);
  try {
    evolve(st, 100.0, 1.0);
    FAIL("expected BlowUp");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BlowUp);
    CHECK(std::string(e.what()).find("t =") != std::string::npos);
  }
}

TEST_CASE("swept surface") {
  const RuledSurface surf = evolve_to_surface(hl_initial_state(64, true), 0.2, 1e-3);
  const ConePatch c = hl_cone();
  for (double s : {0.1, 3.3, 9.0})
    for (double t : {-0.2, -0.05, 0.13, 0.2}) {
      const RuledJet j = surf.jet(s, t);
      const ConeJet k = c.jet(s, t);
      CHECK(oracle::sup(j.phi - k.phi) < 1e-7);
      CHECK(oracle::sup(j.psi - k.phi_s) < 1e-7);
      CHECK(oracle::sup(j.phi_t - k.phi_t) < 1e-7);
    }
  const SampleGrid g = SampleGrid::rectangle(0.0, 4 * kPi, -0.2, 0.2, 16, 9, symmetric_r_values(0.5, 5.0, 2));
  CHECK(sl_defect(surf, g, 0.0, 1e-6).pass);
  CHECK(code_of([&] { surf.jet(0.0, 0.3); }) == Errc::BadRange);
  CHECK(surf.provenance().op == "evolve");
}

TEST_CASE("interval mode on Chebyshev nodes") {
  const ConePatch c = hl_cone();
  auto init = [&](double s) {
    const ConeJet k = c.jet(s, 0.0);
    return std::pair{k.phi, k.phi_s};
  };
  const CurveState st = sample_curve(init, 24, 0.0, 2.0, CurveDomain::Interval);
  CHECK(st.nodes().front() == 0.0);
  CHECK(st.nodes().back() == doctest::Approx(2.0));
  CHECK(validate_initial(st).pass);
  const CurveState end = evolve(st, 0.01, 1e-5);
  CHECK(hl_error(end) < 1e-6);
  CHECK(code_of([&] { sample_curve(init, 2, 0.0, 1.0, CurveDomain::Interval); }) == Errc::BadParams);
}
