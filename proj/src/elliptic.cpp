#include "ruledsl/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ruledsl/error.hpp"

namespace ruledsl {
namespace {

constexpr int kMaxAgmSteps = 40;

void check_modulus(double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw Error(Errc::ModulusOutOfRange, "modulus k=" + std::to_string(k) + " not in [0,1]");
  }
}

double complementary(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

}  // namespace

double complete_elliptic_k(double k) {
  check_modulus(k);
  if (k == 1.0) throw Error(Errc::ModulusOutOfRange, "K(k) diverges at k=1");
  double a = 1.0;
  double b = complementary(k);
  for (int i = 0; i < kMaxAgmSteps && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

double jacobi_period(double k) { return 4.0 * complete_elliptic_k(k); }

EllipticTriple jacobi(double t, double k) {
  check_modulus(k);
  EllipticTriple out;
  out.t = t;
  out.k = k;
  if (t == 0.0) return out;
  if (k == 0.0) {
    out.sn = std::sin(t);
    out.cn = std::cos(t);
    return out;
  }
  if (k == 1.0) {
    out.sn = std::tanh(t);
    out.cn = out.dn = 1.0 / std::cosh(t);
    return out;
  }

  // sn is odd, cn and dn are even; work with |t| reduced into one period.
  const double sign = t < 0.0 ? -1.0 : 1.0;
  double u = std::abs(t);
  const double period = jacobi_period(k);
  u -= period * std::nearbyint(u / period);

  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  a[0] = 1.0;
  double b = complementary(k);
  c[0] = k;
  int n = 0;
  while (std::abs(c[n]) > 1e-16 && n < kMaxAgmSteps) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double amp = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) amp = 0.5 * (amp + std::asin(c[j] * std::sin(amp) / a[j]));
  out.sn = sign * std::sin(amp);
  out.cn = std::cos(amp);
  // dn >= sqrt(1 - k^2) > 0; the ratio cos(amp) / cos(prev - amp) is 0/0 at amp = pi/2
  out.dn = std::sqrt(1.0 - k * k * out.sn * out.sn);
  return out;
}

std::array<double, 3> jacobi_derivatives(const EllipticTriple& e) {
  return {e.cn * e.dn, -e.sn * e.dn, -e.k * e.k * e.sn * e.cn};
}

}  // namespace ruledsl
