#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "ruledsl/complex3.hpp"

namespace ruledsl {

/// Ruling direction phi, offset psi, and their first partials at one (s, t).
struct RuledJet {
  CVec3 phi, phi_s, phi_t, psi, psi_s, psi_t;
};

/// Which construction produced a surface, with its parameters.
struct Provenance {
  std::string op;
  nlohmann::json params = nlohmann::json::object();
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Provenance, op, params)

/// The constant field (u, v) of a translation-type twist, kept so the
/// asymptotic comparison map can be formed.
struct ConstantTwist {
  double u = 0.0;
  double v = 0.0;
};

/// N = { r phi(s, t) + psi(s, t) }, sampled through a jet evaluator.
class RuledSurface {
 public:
  using JetFn = std::function<RuledJet(double, double)>;

  RuledSurface(JetFn jet, Provenance provenance);

  RuledJet jet(double s, double t) const { return jet_(s, t); }
  CVec3 point(double r, double s, double t) const;

  const Provenance& provenance() const { return provenance_; }
  const std::array<double, 2>& r_range() const { return r_range_; }
  const std::optional<ConstantTwist>& constant_twist() const { return constant_twist_; }

  RuledSurface& with_r_range(double lo, double hi) {
    r_range_ = {lo, hi};
    return *this;
  }
  RuledSurface& with_provenance(Provenance p) {
    provenance_ = std::move(p);
    return *this;
  }
  RuledSurface& with_constant_twist(ConstantTwist tw) {
    constant_twist_ = tw;
    return *this;
  }

 private:
  JetFn jet_;
  Provenance provenance_;
  std::array<double, 2> r_range_{-std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity()};
  std::optional<ConstantTwist> constant_twist_;
};

/// (phi, psi) at (s, t).
using RuledValueFn = std::function<std::pair<CVec3, CVec3>(double, double)>;

/// Central differences with one Richardson step, error O(h^4).
RuledJet finite_difference_jet(const RuledValueFn& values, double s, double t, double h = 1e-3);

/// Surface whose derivative oracles are finite_difference_jet of the values.
RuledSurface surface_from_values(RuledValueFn values, Provenance provenance, double h = 1e-3);

/// Applies a global unitary map to every sample.
RuledSurface transformed(const RuledSurface& surf, const Su3& a);

/// Same phi as `first`, offset a psi_1 + b psi_2.
RuledSurface superpose(const RuledSurface& first, double a, const RuledSurface& second, double b);

}  // namespace ruledsl
