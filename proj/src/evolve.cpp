#include "ruledsl/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <variant>

#include "ruledsl/error.hpp"
#include "ruledsl/spectral.hpp"

namespace ruledsl {
namespace {

bool power_of_two(std::size_t n) { return n >= 4 && (n & (n - 1)) == 0; }

// Spatial discretization of one curve domain.
class Scheme {
 public:
  explicit Scheme(const CurveState& st) : domain_(st.domain), a_(st.a), b_(st.b), n_(st.n()) {
    if (domain_ == CurveDomain::Periodic) {
      diff_.emplace<PeriodicDifferentiator>(n_, b_ - a_);
    } else {
      diff_.emplace<ChebyshevDifferentiator>(n_, a_, b_);
    }
  }

  std::vector<CVec3> derivative(const std::vector<CVec3>& f) {
    std::vector<CVec3> out(n_);
    std::vector<cplx> in(n_), d(n_);
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t j = 0; j < n_; ++j) in[j] = f[j][c];
      if (auto* p = std::get_if<PeriodicDifferentiator>(&diff_)) {
        p->derivative(in, d, 1);
      } else {
        std::get<ChebyshevDifferentiator>(diff_).derivative(in, d);
      }
      for (std::size_t j = 0; j < n_; ++j) out[j][c] = d[j];
    }
    return out;
  }

  // Periodic: normalized DFT per component (3n). Interval: nodal values and
  // derivative per component (6n).
  std::vector<cplx> encode(const std::vector<CVec3>& f) {
    if (domain_ == CurveDomain::Periodic) {
      Fft fft(n_);
      std::vector<cplx> out(3 * n_), in(n_);
      for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t j = 0; j < n_; ++j) in[j] = f[j][c];
        fft.forward(in, std::span<cplx>(out).subspan(c * n_, n_));
      }
      for (auto& v : out) v /= double(n_);
      return out;
    }
    const std::vector<CVec3> df = derivative(f);
    std::vector<cplx> out(6 * n_);
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t j = 0; j < n_; ++j) {
        out[c * n_ + j] = f[j][c];
        out[(3 + c) * n_ + j] = df[j][c];
      }
    }
    return out;
  }

 private:
  CurveDomain domain_;
  double a_, b_;
  std::size_t n_;
  std::variant<std::monostate, PeriodicDifferentiator, ChebyshevDifferentiator> diff_;
};

// Evaluates encoded fields at a fixed s, value and s-derivative.
class PointEvaluator {
 public:
  PointEvaluator(CurveDomain domain, double a, double b, std::size_t n, double s)
      : domain_(domain), a_(a), b_(b), n_(n), s_(s) {
    if (domain_ == CurveDomain::Periodic) {
      b0_ = trig_basis(n, b - a, s - a, 0);
      b1_ = trig_basis(n, b - a, s - a, 1);
    }
  }

  CVec3 value(const std::vector<cplx>& enc, int order) const {
    CVec3 out;
    for (std::size_t c = 0; c < 3; ++c) {
      if (domain_ == CurveDomain::Periodic) {
        const auto& basis = order == 0 ? b0_ : b1_;
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j) acc += enc[c * n_ + j] * basis[j];
        out[c] = acc;
      } else {
        const std::size_t block = order == 0 ? c : 3 + c;
        out[c] = chebyshev_interpolate(std::span<const cplx>(enc).subspan(block * n_, n_), a_, b_, s_);
      }
    }
    return out;
  }

 private:
  CurveDomain domain_;
  double a_, b_;
  std::size_t n_;
  double s_;
  std::vector<cplx> b0_, b1_;
};

struct Rhs {
  std::vector<CVec3> phi, psi;
};

Rhs right_hand_side(Scheme& scheme, const std::vector<CVec3>& phi, const std::vector<CVec3>& psi) {
  const std::vector<CVec3> dphi = scheme.derivative(phi);
  const std::vector<CVec3> dpsi = scheme.derivative(psi);
  Rhs r{std::vector<CVec3>(phi.size()), std::vector<CVec3>(phi.size())};
  for (std::size_t j = 0; j < phi.size(); ++j) {
    r.phi[j] = c3_cross(phi[j], dphi[j]);
    r.psi[j] = c3_cross(phi[j], dpsi[j]);
  }
  return r;
}

std::vector<CVec3> axpy(const std::vector<CVec3>& y, double h, const std::vector<CVec3>& k) {
  std::vector<CVec3> out(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) out[j] = y[j] + h * k[j];
  return out;
}

double norm_drift(const std::vector<CVec3>& phi) {
  double m = 0.0;
  for (const CVec3& v : phi) m = std::max(m, std::abs(norm(v) - 1.0));
  return m;
}

CurveState rk4(Scheme& scheme, const CurveState& y, double dt, const EvolveOptions& opts) {
  CurveState out = y;
  out.t = y.t + dt;
  if (dt == 0.0) return out;
  const Rhs k1 = right_hand_side(scheme, y.phi, y.psi);
  const Rhs k2 = right_hand_side(scheme, axpy(y.phi, 0.5 * dt, k1.phi), axpy(y.psi, 0.5 * dt, k1.psi));
  const Rhs k3 = right_hand_side(scheme, axpy(y.phi, 0.5 * dt, k2.phi), axpy(y.psi, 0.5 * dt, k2.psi));
  const Rhs k4 = right_hand_side(scheme, axpy(y.phi, dt, k3.phi), axpy(y.psi, dt, k3.psi));
  for (std::size_t j = 0; j < y.n(); ++j) {
    out.phi[j] = y.phi[j] + (dt / 6.0) * (k1.phi[j] + 2.0 * k2.phi[j] + 2.0 * k3.phi[j] + k4.phi[j]);
    out.psi[j] = y.psi[j] + (dt / 6.0) * (k1.psi[j] + 2.0 * k2.psi[j] + 2.0 * k3.psi[j] + k4.psi[j]);
  }
  const double drift = norm_drift(out.phi);
  if (!(drift <= opts.blowup)) {
    throw Error(Errc::BlowUp, "| |phi| - 1 | = " + std::to_string(drift) + "; reached t = " +
                                  std::to_string(y.t));
  }
  if (opts.renormalize) {
    for (CVec3& v : out.phi) v = v / norm(v);
  }
  return out;
}

void require_valid(const CurveState& state, const EvolveOptions& opts) {
  const ResidualReport r = validate_initial(state, opts.initial_tolerance);
  if (!r.pass) {
    throw Error(Errc::InvalidInitialData, "initial data residual " + std::to_string(r.max_defect()) +
                                              " exceeds " + std::to_string(opts.initial_tolerance));
  }
}

std::size_t step_count(double span, double dt) {
  return std::max<std::size_t>(1, std::size_t(std::ceil(std::abs(span) / dt - 1e-9)));
}

}  // namespace

std::vector<double> CurveState::nodes() const {
  std::vector<double> s(n());
  const double m = double(n());
  for (std::size_t j = 0; j < n(); ++j) {
    if (domain == CurveDomain::Periodic) {
      s[j] = a + (b - a) * double(j) / m;
    } else {
      s[j] = a + 0.5 * (b - a) * (1.0 - std::cos(std::numbers::pi * double(j) / (m - 1.0)));
    }
  }
  return s;
}

CurveState sample_curve(const CurveFn& init, std::size_t n, double a, double b, CurveDomain domain) {
  if (domain == CurveDomain::Periodic && !power_of_two(n)) {
    throw Error(Errc::BadParams, "periodic grid size must be a power of two >= 4");
  }
  if (domain == CurveDomain::Interval && n < 3) throw Error(Errc::BadParams, "interval grid needs n >= 3");
  if (!(b > a)) throw Error(Errc::BadRange, "empty curve domain");
  CurveState st;
  st.domain = domain;
  st.a = a;
  st.b = b;
  st.phi.resize(n);
  st.psi.resize(n);
  const std::vector<double> s = st.nodes();
  for (std::size_t j = 0; j < n; ++j) std::tie(st.phi[j], st.psi[j]) = init(s[j]);
  return st;
}

CurveState hl_initial_state(std::size_t n, bool lie_twist_offset) {
  const ConePatch cone = hl_cone();
  return sample_curve(
      [&](double s) {
        const ConeJet j = cone.jet(s, 0.0);
        return std::pair{j.phi, lie_twist_offset ? j.phi_s : CVec3{}};
      },
      n, 0.0, 4.0 * std::numbers::pi);
}

std::vector<CVec3> curve_derivative(const CurveState& state, const std::vector<CVec3>& field) {
  Scheme scheme(state);
  return scheme.derivative(field);
}

ResidualReport validate_initial(const CurveState& state, double tolerance) {
  Scheme scheme(state);
  const std::vector<CVec3> dphi = scheme.derivative(state.phi);
  const std::vector<CVec3> dpsi = scheme.derivative(state.psi);
  const std::vector<double> s = state.nodes();
  ReportBuilder rb("initial_data", {"unit_norm", "omega_phi_dphi", "omega_phi_dpsi"});
  for (std::size_t j = 0; j < state.n(); ++j) {
    rb.add({std::abs(norm(state.phi[j]) - 1.0), std::abs(omega(state.phi[j], dphi[j])),
            std::abs(omega(state.phi[j], dpsi[j]))},
           {s[j], state.t, 0.0});
  }
  return rb.finish(tolerance);
}

CurveState step(const CurveState& state, double dt, const EvolveOptions& opts) {
  Scheme scheme(state);
  return rk4(scheme, state, dt, opts);
}

CurveDiagnostics diagnose(const CurveState& state) {
  Scheme scheme(state);
  const std::vector<CVec3> dphi = scheme.derivative(state.phi);
  const std::vector<CVec3> dpsi = scheme.derivative(state.psi);
  CurveDiagnostics d{state.t, norm_drift(state.phi), 0.0, 0.0};
  for (std::size_t j = 0; j < state.n(); ++j) {
    d.omega_phi = std::max(d.omega_phi, std::abs(omega(state.phi[j], dphi[j])));
    d.omega_psi = std::max(d.omega_psi, std::abs(omega(state.phi[j], dpsi[j])));
  }
  return d;
}

CurveState evolve(const CurveState& state, double t_end, double dt, const EvolveOptions& opts,
                  std::vector<CurveDiagnostics>* log) {
  if (!(dt > 0.0)) throw Error(Errc::BadRange, "dt must be positive");
  require_valid(state, opts);
  Scheme scheme(state);
  const std::size_t steps = step_count(t_end - state.t, dt);
  const double h = (t_end - state.t) / double(steps);
  CurveState cur = state;
  if (log) log->push_back(diagnose(cur));
  for (std::size_t k = 0; k < steps; ++k) {
    cur = rk4(scheme, cur, h, opts);
    if (k + 1 == steps) cur.t = t_end;
    if (log) log->push_back(diagnose(cur));
  }
  return cur;
}

RuledSurface evolve_to_surface(const CurveState& state, double t_max, double dt, const EvolveOptions& opts,
                               std::vector<CurveDiagnostics>* log) {
  if (!(t_max > 0.0)) throw Error(Errc::BadRange, "t_max must be positive");
  if (!(dt > 0.0)) throw Error(Errc::BadRange, "dt must be positive");
  require_valid(state, opts);

  struct Level {
    std::vector<cplx> phi, psi, phi_t, psi_t;
  };
  const std::size_t k_max = step_count(t_max, dt);
  const double h = t_max / double(k_max);
  auto levels = std::make_shared<std::vector<Level>>(2 * k_max + 1);
  Scheme scheme(state);
  auto store = [&](const CurveState& st, std::size_t slot) {
    const Rhs r = right_hand_side(scheme, st.phi, st.psi);
    (*levels)[slot] = Level{scheme.encode(st.phi), scheme.encode(st.psi), scheme.encode(r.phi),
                            scheme.encode(r.psi)};
  };

  const double t0 = state.t;
  store(state, k_max);
  if (log) log->push_back(diagnose(state));
  for (double sign : {1.0, -1.0}) {
    CurveState cur = state;
    for (std::size_t k = 1; k <= k_max; ++k) {
      cur = rk4(scheme, cur, sign * h, opts);
      cur.t = t0 + sign * h * double(k);
      store(cur, sign > 0 ? k_max + k : k_max - k);
      if (log) log->push_back(diagnose(cur));
    }
  }

  const CurveDomain domain = state.domain;
  const double a = state.a;
  const double b = state.b;
  const std::size_t n = state.n();
  auto jet = [levels, domain, a, b, n, k_max, h, t0, t_max](double s, double t) {
    const double x = (t - t0 + t_max) / h;
    if (x < -1e-9 || x > 2.0 * double(k_max) + 1e-9) {
      throw Error(Errc::BadRange, "t = " + std::to_string(t) + " outside the evolved range");
    }
    const std::size_t k = std::min<std::size_t>(std::size_t(std::max(0.0, std::floor(x))), 2 * k_max - 1);
    const double tau = x - double(k);
    const Level& l0 = (*levels)[k];
    const Level& l1 = (*levels)[k + 1];
    const PointEvaluator ev(domain, a, b, n, s);
    const double tau2 = tau * tau;
    const double tau3 = tau2 * tau;
    const double h00 = 2 * tau3 - 3 * tau2 + 1, h10 = tau3 - 2 * tau2 + tau;
    const double h01 = -2 * tau3 + 3 * tau2, h11 = tau3 - tau2;
    const double d00 = 6 * tau2 - 6 * tau, d10 = 3 * tau2 - 4 * tau + 1;
    const double d01 = -6 * tau2 + 6 * tau, d11 = 3 * tau2 - 2 * tau;
    // cubic Hermite in t through values and stored t-derivatives
    auto hermite = [&](const std::vector<cplx>& f0, const std::vector<cplx>& m0, const std::vector<cplx>& f1,
                       const std::vector<cplx>& m1, CVec3& f, CVec3& fs, CVec3& ft) {
      const CVec3 v0 = ev.value(f0, 0), v1 = ev.value(f1, 0);
      const CVec3 w0 = ev.value(m0, 0), w1 = ev.value(m1, 0);
      f = h00 * v0 + (h10 * h) * w0 + h01 * v1 + (h11 * h) * w1;
      ft = (d00 / h) * v0 + d10 * w0 + (d01 / h) * v1 + d11 * w1;
      fs = h00 * ev.value(f0, 1) + (h10 * h) * ev.value(m0, 1) + h01 * ev.value(f1, 1) +
           (h11 * h) * ev.value(m1, 1);
    };
    RuledJet j;
    hermite(l0.phi, l0.phi_t, l1.phi, l1.phi_t, j.phi, j.phi_s, j.phi_t);
    hermite(l0.psi, l0.psi_t, l1.psi, l1.psi_t, j.psi, j.psi_s, j.psi_t);
    return j;
  };
  Provenance prov{"evolve",
                  {{"n", n},
                   {"domain", domain == CurveDomain::Periodic ? "periodic" : "interval"},
                   {"a", a},
                   {"b", b},
                   {"tmax", t_max},
                   {"dt", dt},
                   {"renormalize", opts.renormalize}}};
  return RuledSurface(jet, prov);
}

}  // namespace ruledsl
