#include "ruledsl/complex3.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "ruledsl/error.hpp"

namespace ruledsl {

double norm(const CVec3& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

double sup_norm(const CVec3& v) {
  double m = 0.0;
  for (const auto& c : v.z) m = std::max({m, std::abs(c.real()), std::abs(c.imag())});
  return m;
}

CVec3 conj(const CVec3& v) { return {{std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}}; }

double metric_g(const CVec3& u, const CVec3& v) {
  return (u[0] * std::conj(v[0]) + u[1] * std::conj(v[1]) + u[2] * std::conj(v[2])).real();
}

double omega(const CVec3& u, const CVec3& v) {
  return (std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1] + std::conj(u[2]) * v[2]).imag();
}

cplx omega_complex(const Frame3& f) {
  const CVec3& a = f.v1;
  const CVec3& b = f.v2;
  const CVec3& c = f.v3;
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

CVec3 c3_cross(const CVec3& u, const CVec3& v) {
  return {{std::conj(u[1] * v[2] - u[2] * v[1]), std::conj(u[2] * v[0] - u[0] * v[2]),
           std::conj(u[0] * v[1] - u[1] * v[0])}};
}

PlaneDefect sl_plane_defect_parts(const Frame3& f, double phase_angle) {
  const double n1 = norm(f.v1);
  const double n2 = norm(f.v2);
  const double n3 = norm(f.v3);
  if (n1 == 0.0 || n2 == 0.0 || n3 == 0.0) {
    throw Error(Errc::ZeroVector, "sl_plane_defect needs three nonzero vectors");
  }
  PlaneDefect d;
  d.lagrangian = std::max({std::abs(omega(f.v1, f.v2)) / (n1 * n2),
                           std::abs(omega(f.v1, f.v3)) / (n1 * n3),
                           std::abs(omega(f.v2, f.v3)) / (n2 * n3)});
  const cplx vol = omega_complex(f);
  d.special = std::abs(std::sin(phase_angle) * vol.real() - std::cos(phase_angle) * vol.imag()) /
              (n1 * n2 * n3);
  return d;
}

double sl_plane_defect(const Frame3& f, double phase_angle) {
  const PlaneDefect d = sl_plane_defect_parts(f, phase_angle);
  return std::max(d.lagrangian, d.special);
}

Su3 random_su3(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Eigen::Matrix3cd> qr(m);
  Su3 q = qr.householderQ();
  const cplx det = q.determinant();
  q.col(0) *= std::conj(det) / std::abs(det);
  return q;
}

CVec3 apply(const Su3& a, const CVec3& v) {
  CVec3 out;
  for (int i = 0; i < 3; ++i) {
    out[i] = a(i, 0) * v[0] + a(i, 1) * v[1] + a(i, 2) * v[2];
  }
  return out;
}

}  // namespace ruledsl
