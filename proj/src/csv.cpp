#include "ruledsl/csv.hpp"

#include <cstdio>

namespace ruledsl {
namespace {

std::string row(std::initializer_list<double> values) {
  std::string out;
  char buf[32];
  for (double v : values) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!out.empty()) out += ',';
    out += buf;
  }
  return out + "\n";
}

}  // namespace

std::string diagnostics_csv(const std::vector<CurveDiagnostics>& rows) {
  std::string out = "# ruledsl evolve diagnostics v1\nt,norm_drift,omega_phi_dphi,omega_phi_dpsi\n";
  for (const auto& d : rows) out += row({d.t, d.norm_drift, d.omega_phi, d.omega_psi});
  return out;
}

std::string sl_samples_csv(const std::vector<SlSample>& rows) {
  std::string out = "# ruledsl sl samples v1\ns,t,r,lagrangian,special,immersed\n";
  for (const auto& s : rows) out += row({s.s, s.t, s.r, s.lagrangian, s.special, s.immersed ? 1.0 : 0.0});
  return out;
}

std::string elliptic_csv(double t, double k, double sn, double cn, double dn) {
  return "# ruledsl elliptic v1\nt,k,sn,cn,dn\n" + row({t, k, sn, cn, dn});
}

}  // namespace ruledsl
