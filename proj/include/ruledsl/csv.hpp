#pragma once

#include <string>
#include <vector>

#include "ruledsl/evolve.hpp"
#include "ruledsl/verify.hpp"

namespace ruledsl {

// Column sets are fixed per version; the first line names the version.

/// # ruledsl evolve diagnostics v1
/// t,norm_drift,omega_phi_dphi,omega_phi_dpsi
std::string diagnostics_csv(const std::vector<CurveDiagnostics>& rows);

/// # ruledsl sl samples v1
/// s,t,r,lagrangian,special,immersed
std::string sl_samples_csv(const std::vector<SlSample>& rows);

/// # ruledsl elliptic v1
/// t,k,sn,cn,dn
std::string elliptic_csv(double t, double k, double sn, double cn, double dn);

}  // namespace ruledsl
