#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include <Eigen/Core>

namespace ruledsl {

using cplx = std::complex<double>;

/// A point or tangent vector of C^3.
struct CVec3 {
  std::array<cplx, 3> z{};

  constexpr cplx& operator[](std::size_t i) { return z[i]; }
  constexpr const cplx& operator[](std::size_t i) const { return z[i]; }

  CVec3& operator+=(const CVec3& o) {
    for (std::size_t i = 0; i < 3; ++i) z[i] += o.z[i];
    return *this;
  }
  CVec3& operator-=(const CVec3& o) {
    for (std::size_t i = 0; i < 3; ++i) z[i] -= o.z[i];
    return *this;
  }
  CVec3& operator*=(cplx a) {
    for (auto& c : z) c *= a;
    return *this;
  }

  friend CVec3 operator+(CVec3 a, const CVec3& b) { return a += b; }
  friend CVec3 operator-(CVec3 a, const CVec3& b) { return a -= b; }
  friend CVec3 operator-(CVec3 a) { return a *= -1.0; }
  friend CVec3 operator*(cplx a, CVec3 v) { return v *= a; }
  friend CVec3 operator*(double a, CVec3 v) { return v *= a; }
  friend CVec3 operator*(CVec3 v, double a) { return v *= a; }
  friend CVec3 operator/(CVec3 v, double a) { return v *= 1.0 / a; }
  friend bool operator==(const CVec3&, const CVec3&) = default;
};

/// An ordered triple of tangent vectors; used in the order given.
struct Frame3 {
  CVec3 v1, v2, v3;
};

/// Euclidean length in C^3 = R^6.
double norm(const CVec3& v);
/// Largest absolute real or imaginary part over the three components.
double sup_norm(const CVec3& v);
CVec3 conj(const CVec3& v);

/// The flat metric g = |dz1|^2 + |dz2|^2 + |dz3|^2 as a real inner product.
double metric_g(const CVec3& u, const CVec3& v);

/// Kaehler form (i/2) sum dz_j ^ dzbar_j. Satisfies omega(u, v) = g(iu, v).
double omega(const CVec3& u, const CVec3& v);

/// Holomorphic volume form dz1 ^ dz2 ^ dz3 on the frame, i.e. the complex
/// determinant with v1, v2, v3 as columns.
cplx omega_complex(const Frame3& f);
inline cplx omega_complex(const CVec3& a, const CVec3& b, const CVec3& c) {
  return omega_complex(Frame3{a, b, c});
}

/// Anti-bilinear cross product:
///   u x v = (conj(u2 v3 - u3 v2), conj(u3 v1 - u1 v3), conj(u1 v2 - u2 v1)).
/// Antisymmetric and SU(3)-equivariant.
CVec3 c3_cross(const CVec3& u, const CVec3& v);

/// Scale-invariant distance of span_R(frame) from a special Lagrangian
/// 3-plane of phase e^{i theta}:
///   max( |omega(v_i,v_j)| / (|v_i||v_j|),
///        |sin(theta) Re Omega - cos(theta) Im Omega| / (|v1||v2||v3|) ).
/// Throws Error{ZeroVector} if any vector vanishes.
double sl_plane_defect(const Frame3& f, double phase_angle);

/// The two components of sl_plane_defect, kept separate for reporting.
struct PlaneDefect {
  double lagrangian = 0.0;  // normalized max |omega(v_i, v_j)|
  double special = 0.0;     // normalized |sin Re Omega - cos Im Omega|
};
PlaneDefect sl_plane_defect_parts(const Frame3& f, double phase_angle);

using Su3 = Eigen::Matrix3cd;

/// Deterministic special unitary matrix: a seeded complex Gaussian matrix
/// orthonormalized by QR, with its determinant phase removed.
Su3 random_su3(std::uint64_t seed);

CVec3 apply(const Su3& a, const CVec3& v);

}  // namespace ruledsl
