#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ruledsl/cone.hpp"
#include "ruledsl/evolve.hpp"
#include "ruledsl/grid.hpp"
#include "ruledsl/holo.hpp"
#include "ruledsl/ruled_surface.hpp"

namespace ruledsl {

/// "hl", "joyce:b1,b2,b3" or "joyce(b1,b2,b3)".
ConePatch cone_from_spec(const std::string& spec);

/// A "c0,c1,..." string, or an array whose entries are numbers or [re, im].
HoloField holo_from_json(const nlohmann::json& j);

/// Grid in the form accepted by from_json(SampleGrid), or
/// {"lattice": <cone spec>, "ns", "nt", "r"} for a closed grid over the
/// cone's period cell.
SampleGrid grid_from_json(const nlohmann::json& j);

/// Initial curve {"surface": {"op", "params"}, "t0", "s_range": [a, b],
/// "domain": "periodic" | "interval"}: phi0 and psi0 are the slice t = t0.
CurveState curve_from_json(const nlohmann::json& j, std::size_t n);

/// Side outputs of a build.
struct BuildLog {
  std::vector<CurveDiagnostics> diagnostics;  // filled by "evolve"
};

/// Rebuilds a surface from its provenance. Supported ops: cone, lie_twist,
/// hl_twist, hl_inverse_twist, joyce_twist, borisenko, bryant_twist,
/// combined_twist, gauge_fix, evolve. Throws Error{ConfigError} for unknown
/// ops or missing fields.
RuledSurface build_surface(const Provenance& prov, BuildLog* log = nullptr);

}  // namespace ruledsl
