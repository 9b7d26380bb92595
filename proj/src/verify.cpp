#include "ruledsl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "ruledsl/error.hpp"
#include "ruledsl/parallel.hpp"

namespace ruledsl {
namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat63 = Eigen::Matrix<double, 6, 3>;
using Mat62 = Eigen::Matrix<double, 6, 2>;

Vec6 real6(const CVec3& v) {
  Vec6 x;
  for (int c = 0; c < 3; ++c) {
    x(c) = v[std::size_t(c)].real();
    x(3 + c) = v[std::size_t(c)].imag();
  }
  return x;
}

Mat63 real_frame(const CVec3& a, const CVec3& b, const CVec3& c) {
  Mat63 m;
  m.col(0) = real6(a);
  m.col(1) = real6(b);
  m.col(2) = real6(c);
  return m;
}

template <class M>
bool full_rank(const M& m, double ratio) {
  const auto sv = m.jacobiSvd().singularValues();
  const double hi = sv(0);
  const double lo = sv(sv.size() - 1);
  return hi > 0.0 && lo >= ratio * hi;
}

constexpr double kImmersionRatio = 1e-8;

const std::vector<double>& r_list(const SampleGrid& grid) {
  static const std::vector<double> one{1.0};
  return grid.r_values.empty() ? one : grid.r_values;
}

void require_nonempty(const SampleGrid& grid) {
  if (grid.empty()) throw Error(Errc::EmptyGrid, "no (s, t) samples");
}

}  // namespace

std::string to_string(RulingVerdict v) {
  switch (v) {
    case RulingVerdict::CaseI: return "Case-i";
    case RulingVerdict::CaseII: return "Case-ii";
    case RulingVerdict::Both: return "Both";
    case RulingVerdict::Neither: return "Neither";
  }
  return "?";
}

ResidualReport sl_defect(const RuledSurface& surf, const SampleGrid& grid, double phase_angle,
                         double tolerance, std::vector<SlSample>* dump) {
  require_nonempty(grid);
  const std::vector<double>& rs = r_list(grid);
  const std::size_t nodes = grid.node_count();
  std::vector<std::vector<SlSample>> slots(nodes);
  std::vector<char> degenerate(nodes, 0);
  parallel_for(nodes, [&](std::size_t k) {
    const int i = int(k / std::size_t(grid.nt));
    const int j = int(k % std::size_t(grid.nt));
    const auto [s, t] = grid.node(i, j);
    const RuledJet jet = surf.jet(s, t);
    Mat62 dirs;
    dirs.col(0) = real6(jet.phi_s);
    dirs.col(1) = real6(jet.phi_t);
    degenerate[k] = full_rank(dirs, kImmersionRatio) ? 0 : 1;
    auto& out = slots[k];
    out.reserve(rs.size());
    for (double r : rs) {
      const Frame3 f{jet.phi, r * jet.phi_s + jet.psi_s, r * jet.phi_t + jet.psi_t};
      SlSample smp{s, t, r, 0.0, 0.0, full_rank(real_frame(f.v1, f.v2, f.v3), kImmersionRatio)};
      if (smp.immersed) {
        const PlaneDefect d = sl_plane_defect_parts(f, phase_angle);
        smp.lagrangian = d.lagrangian;
        smp.special = d.special;
      }
      out.push_back(smp);
    }
  });

  ReportBuilder rb("sl_defect", {"lagrangian", "special"});
  for (std::size_t k = 0; k < nodes; ++k) {
    if (degenerate[k]) rb.add_degenerate_direction();
    for (const SlSample& smp : slots[k]) {
      if (!smp.immersed) {
        rb.add_non_immersion();
        continue;
      }
      rb.add({smp.lagrangian, smp.special}, {smp.s, smp.t, smp.r});
    }
    if (dump) dump->insert(dump->end(), slots[k].begin(), slots[k].end());
  }
  if (std::count(degenerate.begin(), degenerate.end(), 1) > 0) {
    rb.warn("phi fails to be an immersion at some samples");
  }
  ResidualReport rep = rb.finish(tolerance);
  if (rep.samples == 0) rep.warnings.push_back("no immersed samples");
  return rep;
}

PhaseEstimate estimate_phase(const RuledSurface& surf, const SampleGrid& grid) {
  require_nonempty(grid);
  const std::vector<double>& rs = r_list(grid);
  const std::size_t nodes = grid.node_count();
  std::vector<cplx> sums(nodes, 0.0);
  std::vector<std::size_t> counts(nodes, 0);
  parallel_for(nodes, [&](std::size_t k) {
    const auto [s, t] = grid.node(int(k / std::size_t(grid.nt)), int(k % std::size_t(grid.nt)));
    const RuledJet jet = surf.jet(s, t);
    for (double r : rs) {
      const Frame3 f{jet.phi, r * jet.phi_s + jet.psi_s, r * jet.phi_t + jet.psi_t};
      if (!full_rank(real_frame(f.v1, f.v2, f.v3), kImmersionRatio)) continue;
      const cplx om = omega_complex(f);
      if (om == 0.0) continue;
      const cplx unit = om / std::abs(om);
      sums[k] += unit * unit;
      ++counts[k];
    }
  });
  cplx total = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < nodes; ++k) {
    total += sums[k];
    n += counts[k];
  }
  if (n == 0) throw Error(Errc::AllDegenerate, "no immersed samples for the phase estimate");
  const cplx mean = total / double(n);
  double angle = 0.5 * std::arg(mean);
  if (angle < 0.0) angle += std::numbers::pi;
  if (angle >= std::numbers::pi) angle -= std::numbers::pi;
  return {angle, std::max(0.0, 1.0 - std::abs(mean)), n};
}

RulingClass classify_ruling(const RuledSurface& surf, const SampleGrid& grid, double tolerance) {
  require_nonempty(grid);
  const std::vector<double>& rs = r_list(grid);
  const std::size_t nodes = grid.node_count();
  struct Slot {
    double omega = 0.0, fres = 0.0, span = 0.0;
    std::vector<Eigen::Matrix<double, 6, 6>> projectors;
  };
  std::vector<Slot> slots(nodes);
  parallel_for(nodes, [&](std::size_t k) {
    const auto [s, t] = grid.node(int(k / std::size_t(grid.nt)), int(k % std::size_t(grid.nt)));
    const RuledJet j = surf.jet(s, t);
    Slot& out = slots[k];
    const double scale = std::max(norm(j.psi_s), norm(j.psi_t));
    if (scale > 1e-12) {
      out.omega = std::abs(omega(j.phi, j.psi_s)) / (norm(j.phi) * scale);
      const CVec3 rest = j.psi_t - c3_cross(j.phi, j.psi_s);
      const double f = metric_g(rest, j.phi) / metric_g(j.phi, j.phi);
      out.fres = norm(rest - f * j.phi) / scale;
      const Mat63 basis = real_frame(j.phi, j.phi_s, j.phi_t);
      const auto svd = basis.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV);
      auto dist = [&](const CVec3& v) {
        const Vec6 x = real6(v);
        return (x - basis * svd.solve(x)).norm();
      };
      out.span = std::max(dist(j.psi_s), dist(j.psi_t)) / scale;
    }
    for (double r : rs) {
      const Mat63 m = real_frame(j.phi, r * j.phi_s + j.psi_s, r * j.phi_t + j.psi_t);
      if (!full_rank(m, kImmersionRatio)) continue;
      const Eigen::HouseholderQR<Mat63> qr(m);
      const Mat63 q = qr.householderQ() * Mat63::Identity();
      out.projectors.push_back(q * q.transpose());
    }
  });

  RulingClass rc;
  rc.tolerance = tolerance;
  rc.samples = nodes;
  const Eigen::Matrix<double, 6, 6>* first = nullptr;
  for (const Slot& sl : slots) {
    rc.case_i_omega = std::max(rc.case_i_omega, sl.omega);
    rc.case_i_f_residual = std::max(rc.case_i_f_residual, sl.fres);
    rc.case_ii_span = std::max(rc.case_ii_span, sl.span);
    for (const auto& p : sl.projectors) {
      if (!first) first = &p;
      rc.planarity = std::max(rc.planarity, (p - *first).cwiseAbs().maxCoeff());
    }
  }
  const bool case_i = rc.case_i_omega < tolerance && rc.case_i_f_residual < tolerance;
  const bool case_ii = rc.case_ii_span < tolerance;
  rc.verdict = case_i && case_ii ? RulingVerdict::Both
               : case_i          ? RulingVerdict::CaseI
               : case_ii         ? RulingVerdict::CaseII
                                 : RulingVerdict::Neither;
  rc.planar = case_ii && first != nullptr && rc.planarity < 1e-8;
  return rc;
}

AsymptoticFit asymptotic_order(const ConePatch& cone, const RuledSurface& surf, const SampleGrid& grid,
                               const std::vector<double>& r_samples) {
  const auto& tw = surf.constant_twist();
  if (!tw) throw Error(Errc::BadFamily, "surface '" + surf.provenance().op + "' is not a constant twist");
  if (r_samples.size() < 2) throw Error(Errc::BadRange, "need at least two r samples");
  require_nonempty(grid);
  const std::size_t nodes = grid.node_count();
  AsymptoticFit fit;
  fit.r = r_samples;
  for (double r : r_samples) {
    if (!(r > 0.0)) throw Error(Errc::BadRange, "r samples must be positive");
    std::vector<double> d(nodes, 0.0);
    parallel_for(nodes, [&](std::size_t k) {
      const auto [s, t] = grid.node(int(k / std::size_t(grid.nt)), int(k % std::size_t(grid.nt)));
      const CVec3 image = surf.point(r, s - tw->u / r, t - tw->v / r);
      d[k] = norm(image - r * cone.phi(s, t));
    });
    fit.distance.push_back(*std::max_element(d.begin(), d.end()));
  }
  if (std::all_of(fit.distance.begin(), fit.distance.end(), [](double x) { return x == 0.0; })) {
    fit.exact = true;
    fit.slope = std::numeric_limits<double>::quiet_NaN();
    fit.intercept = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  std::vector<double> x, y;
  for (std::size_t k = 0; k < r_samples.size(); ++k) {
    if (fit.distance[k] <= 0.0) continue;
    x.push_back(std::log(r_samples[k]));
    y.push_back(std::log(fit.distance[k]));
  }
  if (x.size() < 2) throw Error(Errc::BadRange, "fewer than two nonzero distances");
  Eigen::MatrixXd a(x.size(), 2);
  Eigen::VectorXd b(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    a(Eigen::Index(k), 0) = x[k];
    a(Eigen::Index(k), 1) = 1.0;
    b(Eigen::Index(k)) = y[k];
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
  fit.slope = coef(0);
  fit.intercept = coef(1);
  fit.fit_residual = std::sqrt((a * coef - b).squaredNorm() / double(x.size()));
  return fit;
}

ResidualReport bounded_distance_check(const RuledSurface& surf, const SampleGrid& grid, double tolerance) {
  require_nonempty(grid);
  const std::vector<double>& rs = r_list(grid);
  const std::size_t nodes = grid.node_count();
  std::vector<double> psi_norm(nodes);
  std::vector<std::vector<double>> dist(nodes);
  parallel_for(nodes, [&](std::size_t k) {
    const auto [s, t] = grid.node(int(k / std::size_t(grid.nt)), int(k % std::size_t(grid.nt)));
    const RuledJet j = surf.jet(s, t);
    psi_norm[k] = norm(j.psi);
    const double pp = metric_g(j.phi, j.phi);
    for (double r : rs) {
      const CVec3 p = r * j.phi + j.psi;
      dist[k].push_back(norm(p - (metric_g(p, j.phi) / pp) * j.phi));
    }
  });
  const double sup_psi = *std::max_element(psi_norm.begin(), psi_norm.end());
  ReportBuilder rb("bounded_distance", {"excess", "r_variation"});
  for (std::size_t k = 0; k < nodes; ++k) {
    const auto [s, t] = grid.node(int(k / std::size_t(grid.nt)), int(k % std::size_t(grid.nt)));
    const auto [lo, hi] = std::minmax_element(dist[k].begin(), dist[k].end());
    for (std::size_t m = 0; m < rs.size(); ++m) {
      rb.add({std::max(0.0, dist[k][m] - sup_psi), *hi - *lo}, {s, t, rs[m]});
    }
  }
  return rb.finish(tolerance);
}

}  // namespace ruledsl
