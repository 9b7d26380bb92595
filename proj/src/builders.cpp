#include "ruledsl/builders.hpp"

#include <regex>

#include "ruledsl/bryant.hpp"
#include "ruledsl/constructions.hpp"
#include "ruledsl/error.hpp"
#include "ruledsl/minimal_surface.hpp"

namespace ruledsl {
namespace {

// Wraps json access errors as ConfigError naming the op and field.
template <class T>
T field(const nlohmann::json& params, const std::string& op, const std::string& key) {
  try {
    return params.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigError, "op '" + op + "', field '" + key + "': " + e.what());
  }
}

const nlohmann::json& sub(const nlohmann::json& params, const std::string& op, const std::string& key) {
  if (!params.is_object() || !params.contains(key)) {
    throw Error(Errc::ConfigError, "op '" + op + "': missing field '" + key + "'");
  }
  return params.at(key);
}

std::string rho_label(const nlohmann::json& params, const std::string& op) {
  const nlohmann::json& r = sub(params, op, "rho");
  if (r.is_string()) return r.get<std::string>();
  return holo_from_json(r).to_string();
}

}  // namespace

ConePatch cone_from_spec(const std::string& spec) {
  if (spec == "hl") return hl_cone();
  static const std::regex joyce(R"(joyce[:(]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?)");
  std::smatch m;
  if (std::regex_match(spec, m, joyce)) {
    return joyce_cone(JoyceParams::make(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3])));
  }
  throw Error(Errc::ConfigError, "unknown cone '" + spec + "'");
}

HoloField holo_from_json(const nlohmann::json& j) {
  if (j.is_string()) return HoloField::parse(j.get<std::string>());
  if (!j.is_array()) throw Error(Errc::ConfigError, "holomorphic field must be a string or an array");
  std::vector<cplx> c;
  for (const auto& e : j) {
    if (e.is_number()) {
      c.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2) {
      c.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw Error(Errc::ConfigError, "bad holomorphic coefficient " + e.dump());
    }
  }
  return HoloField(std::move(c));
}

SampleGrid grid_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("lattice")) {
      const ConePatch cone = cone_from_spec(j.at("lattice").get<std::string>());
      nlohmann::json rest = j;
      rest.erase("lattice");
      rest["rect"] = {0, 1, 0, 1};
      SampleGrid g = rest.get<SampleGrid>();
      return SampleGrid::over_lattice(*cone.periods(), g.ns, g.nt, g.r_values);
    }
    return j.get<SampleGrid>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigError, std::string("grid: ") + e.what());
  }
}

CurveState curve_from_json(const nlohmann::json& j, std::size_t n) {
  const std::string op = "initial curve";
  const RuledSurface surf = build_surface(field<Provenance>(j, op, "surface"));
  const double t0 = j.value("t0", 0.0);
  const auto range = field<std::array<double, 2>>(j, op, "s_range");
  const std::string dom = j.value("domain", std::string("periodic"));
  if (dom != "periodic" && dom != "interval") throw Error(Errc::ConfigError, "domain '" + dom + "'");
  CurveState st = sample_curve(
      [&](double s) {
        const RuledJet jet = surf.jet(s, t0);
        return std::pair{jet.phi, jet.psi};
      },
      n, range[0], range[1], dom == "periodic" ? CurveDomain::Periodic : CurveDomain::Interval);
  st.t = t0;
  return st;
}

RuledSurface build_surface(const Provenance& prov, BuildLog* log) {
  const std::string& op = prov.op;
  const nlohmann::json& p = prov.params;
  if (op == "cone") {
    RuledSurface s = lie_twist(cone_from_spec(field<std::string>(p, op, "cone")), HoloField{});
    return s.with_provenance(prov);
  }
  if (op == "lie_twist") {
    return lie_twist(cone_from_spec(field<std::string>(p, op, "cone")), holo_from_json(sub(p, op, "holo")));
  }
  if (op == "hl_twist") return hl_twist(holo_from_json(sub(p, op, "holo")));
  if (op == "hl_inverse_twist") return hl_inverse_twist(holo_from_json(sub(p, op, "holo")));
  if (op == "joyce_twist") {
    const auto b = field<std::array<int, 3>>(p, op, "b");
    return joyce_twist(JoyceParams::make(b[0], b[1], b[2]), field<double>(p, op, "u"), field<double>(p, op, "v"));
  }
  if (op == "borisenko") {
    const std::string label = rho_label(p, op);
    return borisenko(minimal_surface(field<std::string>(p, op, "surface"), harmonic_rho_named(label), label));
  }
  if (op == "bryant_twist" || op == "combined_twist") {
    const ConePatch cone = cone_from_spec(field<std::string>(p, op, "cone"));
    const BryantRho rho = bryant_rho(field<std::string>(p, op, "rho"));
    const auto base = p.contains("basepoint") ? field<std::array<double, 2>>(p, op, "basepoint")
                                              : std::array<double, 2>{0.0, 0.0};
    const SampleGrid domain = grid_from_json(sub(p, op, "domain"));
    const double tol = p.value("closure_tolerance", 1e-8);
    if (op == "bryant_twist") return bryant_twist(cone, rho, base, domain, tol);
    return combined_twist(cone, holo_from_json(sub(p, op, "holo")), rho, base, domain, tol);
  }
  if (op == "gauge_fix") return gauge_fix(build_surface(field<Provenance>(p, op, "base"), log));
  if (op == "evolve") {
    const auto n = field<std::size_t>(p, op, "n");
    const CurveState init = curve_from_json(sub(p, op, "init"), n);
    EvolveOptions opts;
    opts.renormalize = p.value("renormalize", false);
    RuledSurface s = evolve_to_surface(init, field<double>(p, op, "tmax"), field<double>(p, op, "dt"), opts,
                                       log ? &log->diagnostics : nullptr);
    nlohmann::json params = p;
    params["renormalize"] = opts.renormalize;
    return s.with_provenance({op, params});
  }
  throw Error(Errc::ConfigError, "unknown construction op '" + op + "'");
}

}  // namespace ruledsl
