#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ruledsl/complex3.hpp"
#include "ruledsl/grid.hpp"
#include "ruledsl/report.hpp"

namespace ruledsl {

/// phi and its first and second partial derivatives at one (s, t).
struct ConeJet {
  CVec3 phi, phi_s, phi_t, phi_ss, phi_st, phi_tt;
};

enum class ConeKind { HarveyLawson, Joyce, NumericGrid, Perturbed };

std::string to_string(ConeKind kind);

/// Integer data of the U(1)-invariant torus cone family, with the derived
/// real constants a > 0 and b in [0, 1):
///   a^2 = b2 (b3 - b1),   b^2 = b1 (b2 - b3) / (b2 (b1 - b3)).
struct JoyceParams {
  int b1 = -2;
  int b2 = 1;
  int b3 = 1;
  double a = 0.0;
  double b = 0.0;

  /// Throws Error{BadParams} unless b1, b2, b3 are coprime integers with
  /// b2 >= b3 > 0 > b1 and b1 + b2 + b3 = 0.
  static JoyceParams make(int b1, int b2, int b3);
};

/// The link of a special Lagrangian cone, phi : (s, t) -> S^5, in oriented
/// conformal coordinates. Immutable after construction.
class ConePatch {
 public:
  using JetFn = std::function<ConeJet(double, double)>;

  ConePatch(ConeKind kind, JetFn jet, std::optional<Lattice> periods, std::string label);

  ConeKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  const std::optional<Lattice>& periods() const { return periods_; }
  const std::optional<JoyceParams>& joyce() const { return joyce_; }

  ConeJet jet(double s, double t) const { return jet_(s, t); }
  CVec3 phi(double s, double t) const { return jet_(s, t).phi; }
  /// lambda = |d phi / ds|^2.
  double conformal_factor(double s, double t) const;

  /// Attaches the integer parameters of an elliptic torus cone.
  ConePatch& with_joyce(const JoyceParams& p) {
    joyce_ = p;
    return *this;
  }

 private:
  ConeKind kind_;
  JetFn jet_;
  std::optional<Lattice> periods_;
  std::optional<JoyceParams> joyce_;
  std::string label_;
};

/// The Harvey-Lawson T^2-cone
///   phi(s, t) = (e^{is}, e^{-is/2 - i sqrt3 t/2}, e^{-is/2 + i sqrt3 t/2}) / sqrt3,
/// periodic under (2 pi, 2 pi/sqrt3) and (0, 4 pi/sqrt3), with lambda = 1/2.
ConePatch hl_cone();

/// The elliptic-function torus cone with parameters p; periods (2 pi, 0)
/// and (0, P(b) / a) where P is the common period of sn, cn, dn.
ConePatch joyce_cone(const JoyceParams& p);

/// normalize(phi + offset) with analytic derivatives. Not special
/// Lagrangian for a generic offset; used as a negative control.
ConePatch perturbed_cone(const ConePatch& base, const CVec3& offset);

/// Residuals of the cone condition omega(phi, phi_s) = 0 and
/// phi_t = phi x phi_s over the grid nodes (r values are ignored).
/// Samples with |phi_s| below 1e-8 are counted as degenerate directions and
/// produce a warning: phi fails to be an immersion there.
ResidualReport cone_condition_defect(const ConePatch& cone, const SampleGrid& grid,
                                     double tolerance = 1e-9);

/// Periodic samples phi(i Ls / ns, j Lt / nt) for 0 <= i <= ns, 0 <= j <= nt,
/// stored row-major with index i * (nt + 1) + j. The last row and column
/// repeat the first.
struct ConeGridSamples {
  int ns = 0;
  int nt = 0;
  double period_s = 0.0;
  double period_t = 0.0;
  std::vector<CVec3> values;

  const CVec3& at(int i, int j) const { return values[std::size_t(i) * std::size_t(nt + 1) + std::size_t(j)]; }
};

/// Samples a cone onto a periodic rectangle (the rectangle must be a period cell).
ConeGridSamples sample_cone(const ConePatch& cone, int ns, int nt, double period_s, double period_t);

/// Cone whose derivative oracles are spectral derivatives of the samples.
/// Throws Error{NotUnitNorm} if any sample is off the unit sphere by more than
/// 1e-6 and Error{NotPeriodic} if the closing row or column differs from the
/// first by more than 1e-6.
ConePatch numeric_cone_from_grid(const ConeGridSamples& samples);

}  // namespace ruledsl
