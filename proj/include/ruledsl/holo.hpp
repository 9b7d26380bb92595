#pragma once

#include <string>
#include <vector>

#include "ruledsl/complex3.hpp"

namespace ruledsl {

/// Holomorphic vector field w = u d/ds + v d/dt with u + iv = p(s + it) for
/// a complex polynomial p (coefficients in ascending degree).
class HoloField {
 public:
  struct Value {
    double u = 0.0, v = 0.0;
    double u_s = 0.0, u_t = 0.0, v_s = 0.0, v_t = 0.0;
  };

  HoloField() = default;
  explicit HoloField(std::vector<cplx> coeffs);
  static HoloField constant(double u, double v) { return HoloField({cplx(u, v)}); }
  static HoloField monomial(int degree, cplx c = 1.0);

  /// u, v and their partials; Cauchy-Riemann holds exactly by construction.
  Value eval(double s, double t) const;
  cplx p(cplx z) const;
  cplx dp(cplx z) const;

  /// The field with polynomial p'.
  HoloField derivative() const;

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  /// Degree after trimming zero leading coefficients; -1 for the zero field.
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  bool is_constant() const { return degree() <= 0; }

  /// Parses "c0,c1,..." where each entry is a real or complex literal such as
  /// "1", "-2.5", "3i", "1+2i", "1e-3-4i".
  static HoloField parse(const std::string& text);
  std::string to_string() const;

 private:
  std::vector<cplx> coeffs_;
};

/// Parses one complex literal; throws Error{ConfigError} on bad input.
cplx parse_complex(const std::string& text);

}  // namespace ruledsl
