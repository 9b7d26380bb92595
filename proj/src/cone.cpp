#include "ruledsl/cone.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "ruledsl/elliptic.hpp"
#include "ruledsl/error.hpp"
#include "ruledsl/parallel.hpp"
#include "ruledsl/spectral.hpp"

namespace ruledsl {
namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

ConeJet hl_jet(double s, double t) {
  // phases theta_j = alpha_j s + beta_j t
  const std::array<double, 3> alpha{1.0, -0.5, -0.5};
  const std::array<double, 3> beta{0.0, -0.5 * kSqrt3, 0.5 * kSqrt3};
  ConeJet j;
  for (std::size_t c = 0; c < 3; ++c) {
    const cplx p = std::exp(kI * (alpha[c] * s + beta[c] * t)) / kSqrt3;
    j.phi[c] = p;
    j.phi_s[c] = kI * alpha[c] * p;
    j.phi_t[c] = kI * beta[c] * p;
    j.phi_ss[c] = -alpha[c] * alpha[c] * p;
    j.phi_st[c] = -alpha[c] * beta[c] * p;
    j.phi_tt[c] = -beta[c] * beta[c] * p;
  }
  return j;
}

}  // namespace

std::string to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::HarveyLawson: return "hl";
    case ConeKind::Joyce: return "joyce";
    case ConeKind::NumericGrid: return "numeric";
    case ConeKind::Perturbed: return "perturbed";
  }
  return "unknown";
}

JoyceParams JoyceParams::make(int b1, int b2, int b3) {
  if (!(b2 >= b3 && b3 > 0 && 0 > b1)) {
    throw Error(Errc::BadParams, "need b2 >= b3 > 0 > b1");
  }
  if (b1 + b2 + b3 != 0) throw Error(Errc::BadParams, "need b1 + b2 + b3 = 0");
  if (std::gcd(std::gcd(b1, b2), b3) != 1) throw Error(Errc::BadParams, "b1, b2, b3 not coprime");
  JoyceParams p;
  p.b1 = b1;
  p.b2 = b2;
  p.b3 = b3;
  // both ratios are exact integer/rational expressions before the root
  p.a = std::sqrt(double(b2 * (b3 - b1)));
  p.b = std::sqrt(double(b1 * (b2 - b3)) / double(b2 * (b1 - b3)));
  return p;
}

ConePatch::ConePatch(ConeKind kind, JetFn jet, std::optional<Lattice> periods, std::string label)
    : kind_(kind), jet_(std::move(jet)), periods_(periods), label_(std::move(label)) {}

double ConePatch::conformal_factor(double s, double t) const {
  const CVec3 d = jet_(s, t).phi_s;
  return std::norm(d[0]) + std::norm(d[1]) + std::norm(d[2]);
}

ConePatch hl_cone() {
  Lattice lat{{2.0 * kPi, 2.0 * kPi / kSqrt3}, {0.0, 4.0 * kPi / kSqrt3}};
  return ConePatch(ConeKind::HarveyLawson, hl_jet, lat, "hl");
}

ConePatch joyce_cone(const JoyceParams& in) {
  const JoyceParams p = JoyceParams::make(in.b1, in.b2, in.b3);
  const std::array<double, 3> b{double(p.b1), double(p.b2), double(p.b3)};
  const std::array<double, 3> amp{std::sqrt(b[1] / (b[1] - b[0])), std::sqrt(b[0] / (b[0] - b[1])),
                                  std::sqrt(b[0] / (b[0] - b[2]))};
  const double a = p.a;
  const double k = p.b;
  auto jet = [b, amp, a, k](double s, double t) {
    const EllipticTriple e = jacobi(a * t, k);
    const double k2 = k * k;
    // (dn, cn, sn) and their first and second derivatives in the argument
    const std::array<double, 3> f{e.dn, e.cn, e.sn};
    const std::array<double, 3> df{-k2 * e.sn * e.cn, -e.sn * e.dn, e.cn * e.dn};
    const std::array<double, 3> ddf{-k2 * e.dn * (e.cn * e.cn - e.sn * e.sn),
                                    -e.cn * e.dn * e.dn + k2 * e.sn * e.sn * e.cn,
                                    -e.sn * e.dn * e.dn - k2 * e.sn * e.cn * e.cn};
    ConeJet j;
    for (std::size_t c = 0; c < 3; ++c) {
      const cplx w = kI * amp[c] * std::exp(kI * (b[c] * s));
      j.phi[c] = w * f[c];
      j.phi_s[c] = kI * b[c] * j.phi[c];
      j.phi_ss[c] = -b[c] * b[c] * j.phi[c];
      j.phi_t[c] = w * (a * df[c]);
      j.phi_st[c] = kI * b[c] * j.phi_t[c];
      j.phi_tt[c] = w * (a * a * ddf[c]);
    }
    return j;
  };
  Lattice lat{{2.0 * kPi, 0.0}, {0.0, jacobi_period(k) / a}};
  const std::string label =
      "joyce(" + std::to_string(p.b1) + "," + std::to_string(p.b2) + "," + std::to_string(p.b3) + ")";
  return ConePatch(ConeKind::Joyce, jet, lat, label).with_joyce(p);
}

ConePatch perturbed_cone(const ConePatch& base, const CVec3& offset) {
  auto jet = [base, offset](double s, double t) {
    const ConeJet w = base.jet(s, t);
    const CVec3 v = w.phi + offset;
    const double n = norm(v);
    const CVec3 q = v / n;
    // q = v/|v|; d|v| = g(q, dv)
    auto first = [&](const CVec3& dv) { return (dv - metric_g(q, dv) * q) / n; };
    const CVec3 qs = first(w.phi_s);
    const CVec3 qt = first(w.phi_t);
    auto second = [&](const CVec3& da, const CVec3& db, const CVec3& dab, const CVec3& qa,
                      const CVec3& qb) {
      const double ga = metric_g(q, da);
      const double nb = metric_g(q, db);
      const CVec3 num = dab - ga * qb - (metric_g(qb, da) + metric_g(q, dab)) * q;
      return num / n - (nb / n) * qa;
    };
    ConeJet j;
    j.phi = q;
    j.phi_s = qs;
    j.phi_t = qt;
    j.phi_ss = second(w.phi_s, w.phi_s, w.phi_ss, qs, qs);
    j.phi_st = second(w.phi_s, w.phi_t, w.phi_st, qs, qt);
    j.phi_tt = second(w.phi_t, w.phi_t, w.phi_tt, qt, qt);
    return j;
  };
  return ConePatch(ConeKind::Perturbed, jet, base.periods(), base.label() + "+offset");
}

ResidualReport cone_condition_defect(const ConePatch& cone, const SampleGrid& grid,
                                     double tolerance) {
  if (grid.empty()) throw Error(Errc::EmptyGrid, "cone_condition_defect on an empty grid");
  const std::size_t count = grid.node_count();
  std::vector<std::array<double, 3>> rows(count);  // omega, cross, |phi_s|
  parallel_for(std::size_t(grid.ns), [&](std::size_t i) {
    for (int j = 0; j < grid.nt; ++j) {
      const auto [s, t] = grid.node(int(i), j);
      const ConeJet jet = cone.jet(s, t);
      rows[grid.index(int(i), j)] = {std::abs(omega(jet.phi, jet.phi_s)),
                                     sup_norm(jet.phi_t - c3_cross(jet.phi, jet.phi_s)),
                                     norm(jet.phi_s)};
    }
  });
  ReportBuilder rb("cone_condition", {"omega_phi_phi_s", "phi_t_minus_cross"});
  for (int i = 0; i < grid.ns; ++i) {
    for (int j = 0; j < grid.nt; ++j) {
      const auto& row = rows[grid.index(i, j)];
      const auto [s, t] = grid.node(i, j);
      rb.add({row[0], row[1]}, {s, t, 0.0});
      if (row[2] < 1e-8) {
        rb.add_degenerate_direction();
        rb.warn("phi is not an immersion at some samples (|phi_s| < 1e-8)");
      }
    }
  }
  return rb.finish(tolerance);
}

ConeGridSamples sample_cone(const ConePatch& cone, int ns, int nt, double period_s,
                            double period_t) {
  ConeGridSamples g{ns, nt, period_s, period_t, {}};
  g.values.resize(std::size_t(ns + 1) * std::size_t(nt + 1));
  for (int i = 0; i <= ns; ++i) {
    for (int j = 0; j <= nt; ++j) {
      // the closing row/column is sampled independently, not copied
      g.values[std::size_t(i) * std::size_t(nt + 1) + std::size_t(j)] =
          cone.phi(period_s * i / ns, period_t * j / nt);
    }
  }
  return g;
}

namespace {

/// Basis e^{i k w x} and its first two derivatives, with the Nyquist mode
/// split as a cosine.
void fourier_basis(int n, double w, double x, std::array<std::vector<cplx>, 3>& out) {
  for (auto& v : out) v.assign(std::size_t(n), 0.0);
  for (int j = 0; j < n; ++j) {
    const int k = wavenumber(std::size_t(j), std::size_t(n));
    const double kw = k * w;
    if (n % 2 == 0 && 2 * j == n) {
      const double c = std::cos(kw * x);
      const double sn = std::sin(kw * x);
      out[0][j] = c;
      out[1][j] = -kw * sn;
      out[2][j] = -kw * kw * c;
      continue;
    }
    const cplx e = std::exp(kI * (kw * x));
    out[0][j] = e;
    out[1][j] = kI * kw * e;
    out[2][j] = -kw * kw * e;
  }
}

}  // namespace

ConePatch numeric_cone_from_grid(const ConeGridSamples& g) {
  if (g.ns <= 0 || g.nt <= 0 || g.values.size() != std::size_t(g.ns + 1) * std::size_t(g.nt + 1)) {
    throw Error(Errc::BadParams, "cone grid has inconsistent dimensions");
  }
  for (const auto& v : g.values) {
    if (std::abs(norm(v) - 1.0) > 1e-6) throw Error(Errc::NotUnitNorm, "cone sample off the unit sphere");
  }
  for (int i = 0; i <= g.ns; ++i) {
    if (sup_norm(g.at(i, 0) - g.at(i, g.nt)) > 1e-6) throw Error(Errc::NotPeriodic, "t-direction");
  }
  for (int j = 0; j <= g.nt; ++j) {
    if (sup_norm(g.at(0, j) - g.at(g.ns, j)) > 1e-6) throw Error(Errc::NotPeriodic, "s-direction");
  }

  const int ns = g.ns;
  const int nt = g.nt;
  // coeffs[c][k * nt + l]: normalized 2-D DFT of component c
  auto coeffs = std::make_shared<std::array<std::vector<cplx>, 3>>();
  Fft fs{std::size_t(ns)};
  Fft ft{std::size_t(nt)};
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<cplx> data(std::size_t(ns) * std::size_t(nt));
    std::vector<cplx> row(nt), rowhat(nt);
    for (int i = 0; i < ns; ++i) {
      for (int j = 0; j < nt; ++j) row[j] = g.at(i, j)[c];
      ft.forward(row, rowhat);
      for (int j = 0; j < nt; ++j) data[std::size_t(i) * nt + j] = rowhat[j];
    }
    std::vector<cplx> col(ns), colhat(ns);
    for (int j = 0; j < nt; ++j) {
      for (int i = 0; i < ns; ++i) col[i] = data[std::size_t(i) * nt + j];
      fs.forward(col, colhat);
      for (int i = 0; i < ns; ++i) data[std::size_t(i) * nt + j] = colhat[i] / double(ns * nt);
    }
    (*coeffs)[c] = std::move(data);
  }

  const double ws = 2.0 * kPi / g.period_s;
  const double wt = 2.0 * kPi / g.period_t;
  auto jet = [coeffs, ns, nt, ws, wt](double s, double t) {
    std::array<std::vector<cplx>, 3> bs, bt;
    fourier_basis(ns, ws, s, bs);
    fourier_basis(nt, wt, t, bt);
    ConeJet j;
    for (std::size_t c = 0; c < 3; ++c) {
      const auto& cf = (*coeffs)[c];
      cplx v00 = 0, v10 = 0, v01 = 0, v20 = 0, v11 = 0, v02 = 0;
      for (int k = 0; k < ns; ++k) {
        cplx r0 = 0, r1 = 0, r2 = 0;
        const cplx* rowp = &cf[std::size_t(k) * nt];
        for (int l = 0; l < nt; ++l) {
          r0 += rowp[l] * bt[0][l];
          r1 += rowp[l] * bt[1][l];
          r2 += rowp[l] * bt[2][l];
        }
        v00 += bs[0][k] * r0;
        v10 += bs[1][k] * r0;
        v20 += bs[2][k] * r0;
        v01 += bs[0][k] * r1;
        v11 += bs[1][k] * r1;
        v02 += bs[0][k] * r2;
      }
      j.phi[c] = v00;
      j.phi_s[c] = v10;
      j.phi_t[c] = v01;
      j.phi_ss[c] = v20;
      j.phi_st[c] = v11;
      j.phi_tt[c] = v02;
    }
    return j;
  };
  Lattice lat{{g.period_s, 0.0}, {0.0, g.period_t}};
  return ConePatch(ConeKind::NumericGrid, jet, lat, "numeric");
}

}  // namespace ruledsl
