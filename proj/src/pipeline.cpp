#include "ruledsl/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ruledsl/builders.hpp"
#include "ruledsl/cone.hpp"
#include "ruledsl/constructions.hpp"
#include "ruledsl/csv.hpp"
#include "ruledsl/error.hpp"
#include "ruledsl/export_mesh.hpp"
#include "ruledsl/manifest.hpp"
#include "ruledsl/parallel.hpp"
#include "ruledsl/verify.hpp"

namespace ruledsl {
namespace {

// A config node together with its JSON pointer, for diagnostics.
class Cfg {
 public:
  Cfg(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const nlohmann::json& json() const { return j_; }
  const std::string& path() const { return path_; }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

  Cfg child(const std::string& key) const {
    if (!has(key)) fail(key, "missing");
    return {j_.at(key), path_ + "/" + key};
  }
  Cfg item(std::size_t k) const { return {j_.at(k), path_ + "/" + std::to_string(k)}; }

  template <class T>
  T get(const std::string& key) const {
    if (!has(key)) fail(key, "missing");
    try {
      return j_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      fail(key, e.what());
    }
  }
  template <class T>
  T get(const std::string& key, T fallback) const {
    return has(key) ? get<T>(key) : fallback;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    throw Error(Errc::ConfigError, "field '" + path_ + "/" + key + "': " + why);
  }

  // Wraps errors raised while interpreting this node.
  template <class F>
  auto guard(F&& f) const {
    try {
      return f();
    } catch (const Error& e) {
      if (e.code() != Errc::ConfigError) throw;
      throw Error(Errc::ConfigError, "field '" + path_ + "': " + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::ConfigError, "field '" + path_ + "': " + e.what());
    }
  }

 private:
  const nlohmann::json& j_;
  std::string path_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

SampleGrid grid_of(const Cfg& check) {
  const Cfg g = check.child("grid");
  return g.guard([&] { return grid_from_json(g.json()); });
}

std::string report_message(const ResidualReport& r) {
  if (r.samples == 0) return "no usable samples";
  std::string worst_name;
  double worst = -1.0;
  for (const auto& c : r.conditions) {
    if (c.max > worst) {
      worst = c.max;
      worst_name = c.name;
    }
  }
  const std::string cmp = r.pass ? " < " : " >= ";
  return "condition '" + worst_name + "' max " + fmt(worst) + cmp + "tolerance " + fmt(r.tolerance) +
         " (worst at s=" + fmt(r.worst.s) + ", t=" + fmt(r.worst.t) + ", r=" + fmt(r.worst.r) + ")";
}

CheckResult from_report(const std::string& name, const ResidualReport& r) {
  return {name, r.pass, report_message(r), nlohmann::json(r)};
}

// Cone named by the check, else by the construction.
std::string cone_of(const Cfg& check, const Provenance& prov) {
  if (check.has("cone")) return check.get<std::string>("cone");
  if (prov.params.contains("cone")) return prov.params.at("cone").get<std::string>();
  if (prov.op == "joyce_twist") {
    const auto b = prov.params.at("b");
    return "joyce:" + std::to_string(b[0].get<int>()) + "," + std::to_string(b[1].get<int>()) + "," +
           std::to_string(b[2].get<int>());
  }
  if (prov.op.rfind("hl_", 0) == 0) return "hl";
  check.fail("cone", "missing and not implied by the construction");
}

struct Context {
  const RuledSurface& surf;
  const Provenance& prov;
  const BuildLog& log;
  const PipelineOptions& opts;
  std::uint64_t seed;
  std::filesystem::path out_dir;
  std::vector<std::filesystem::path>& artifacts;
};

double tolerance_of(const Cfg& check, const Context& ctx, double fallback) {
  if (ctx.opts.tolerance) return *ctx.opts.tolerance;
  return check.get<double>("tolerance", fallback);
}

double default_sl_tolerance(const Provenance& prov) {
  // finite-difference and time-stepped derivative oracles
  return (prov.op == "borisenko" || prov.op == "evolve") ? 1e-6 : 1e-9;
}

CheckResult run_check(const Cfg& check, Context& ctx) {
  const std::string kind = check.get<std::string>("check");
  const double deg = std::numbers::pi / 180.0;
  if (kind == "sl_defect") {
    const double phase = check.get<double>("phase_deg", ctx.prov.op == "borisenko" ? 90.0 : 0.0) * deg;
    std::vector<SlSample> dump;
    const bool want_dump = check.has("dump");
    const ResidualReport r = sl_defect(ctx.surf, grid_of(check), phase,
                                       tolerance_of(check, ctx, default_sl_tolerance(ctx.prov)),
                                       want_dump ? &dump : nullptr);
    if (want_dump) {
      const auto path = ctx.out_dir / check.get<std::string>("dump");
      write_text_file(path, sl_samples_csv(dump));
      ctx.artifacts.push_back(path);
    }
    return from_report(kind, r);
  }
  if (kind == "phase") {
    const PhaseEstimate p = estimate_phase(ctx.surf, grid_of(check));
    const double expect = check.get<double>("expect_deg", ctx.prov.op == "borisenko" ? 90.0 : 0.0) * deg;
    const double tol = tolerance_of(check, ctx, 1e-6);
    double off = std::fmod(std::abs(p.angle - expect), std::numbers::pi);
    off = std::min(off, std::numbers::pi - off);
    const bool pass = p.dispersion < tol && off < tol;
    return {kind, pass,
            "angle " + fmt(p.angle / deg) + " deg (expected " + fmt(expect / deg) + "), dispersion " +
                fmt(p.dispersion),
            {{"angle", p.angle}, {"dispersion", p.dispersion}, {"samples", p.samples}, {"tolerance", tol}}};
  }
  if (kind == "classify") {
    const RulingClass rc = classify_ruling(ctx.surf, grid_of(check), tolerance_of(check, ctx, 1e-9));
    const std::string expect = check.get<std::string>("expect", "Case-i");
    bool pass = to_string(rc.verdict) == expect;
    if (expect == "Case-ii" && check.get<bool>("require_planar", true)) pass = pass && rc.planar;
    return {kind, pass, "verdict " + to_string(rc.verdict) + " (expected " + expect + ")",
            {{"verdict", to_string(rc.verdict)},
             {"case_i_omega", rc.case_i_omega},
             {"case_i_f_residual", rc.case_i_f_residual},
             {"case_ii_span", rc.case_ii_span},
             {"planarity", rc.planarity},
             {"planar", rc.planar},
             {"tolerance", rc.tolerance}}};
  }
  if (kind == "cone") {
    const ConePatch cone = check.guard([&] { return cone_from_spec(cone_of(check, ctx.prov)); });
    return from_report(kind, cone_condition_defect(cone, grid_of(check), tolerance_of(check, ctx, 1e-9)));
  }
  if (kind == "asymptotics") {
    const ConePatch cone = check.guard([&] { return cone_from_spec(cone_of(check, ctx.prov)); });
    const auto rs = geometric_r_values(check.get<double>("rmin", 1e2), check.get<double>("rmax", 1e6),
                                       check.get<int>("per_decade", 4));
    const AsymptoticFit fit = asymptotic_order(cone, ctx.surf, grid_of(check), rs);
    const double expect = check.get<double>("expect_slope", -1.0);
    const double tol = check.get<double>("slope_tolerance", 0.05);
    nlohmann::json detail{{"r", fit.r}, {"distance", fit.distance}, {"exact", fit.exact}};
    if (fit.exact) {
      const bool pass = check.get<bool>("expect_exact", false);
      return {kind, pass, "exact coincidence: d(r) = 0", detail};
    }
    detail["slope"] = fit.slope;
    detail["fit_residual"] = fit.fit_residual;
    const bool pass = std::abs(fit.slope - expect) <= tol;
    return {kind, pass, "slope " + fmt(fit.slope) + " (expected " + fmt(expect) + " +- " + fmt(tol) + ")",
            detail};
  }
  if (kind == "bounded_distance") {
    return from_report(kind, bounded_distance_check(ctx.surf, grid_of(check), tolerance_of(check, ctx, 1e-12)));
  }
  if (kind == "agreement") {
    const Cfg ref = check.child("reference");
    const RuledSurface other = ref.guard([&] { return build_surface(ref.json().get<Provenance>()); });
    const SampleGrid g = grid_of(check);
    ReportBuilder rb("agreement", {"phi", "psi"});
    for (int i = 0; i < g.ns; ++i) {
      for (int j = 0; j < g.nt; ++j) {
        const auto [s, t] = g.node(i, j);
        const RuledJet a = ctx.surf.jet(s, t);
        const RuledJet b = other.jet(s, t);
        rb.add({sup_norm(a.phi - b.phi), sup_norm(a.psi - b.psi)}, {s, t, 0.0});
      }
    }
    return from_report(kind, rb.finish(tolerance_of(check, ctx, 1e-10)));
  }
  if (kind == "su3_invariance" || kind == "gauge_invariance") {
    const SampleGrid g = grid_of(check);
    const double phase = check.get<double>("phase_deg", ctx.prov.op == "borisenko" ? 90.0 : 0.0) * deg;
    const RuledSurface other = kind == "gauge_invariance"
                                   ? gauge_fix(ctx.surf)
                                   : transformed(ctx.surf, random_su3(check.get<std::uint64_t>("seed", ctx.seed)));
    const double tol = tolerance_of(check, ctx, 1e-10);
    const ResidualReport a = sl_defect(ctx.surf, g, phase, 1.0);
    const ResidualReport b = sl_defect(other, g, phase, 1.0);
    const double diff = std::abs(a.max_defect() - b.max_defect());
    return {kind, diff < tol, "defect change " + fmt(diff) + " (tolerance " + fmt(tol) + ")",
            {{"before", a.max_defect()}, {"after", b.max_defect()}, {"tolerance", tol}}};
  }
  if (kind == "evolution") {
    if (ctx.log.diagnostics.empty()) check.fail("check", "construction produced no evolution diagnostics");
    double drift = 0.0, cons = 0.0;
    for (const auto& d : ctx.log.diagnostics) {
      drift = std::max(drift, d.norm_drift);
      cons = std::max({cons, d.omega_phi, d.omega_psi});
    }
    const double max_drift = check.get<double>("max_norm_drift", 1e-8);
    const double max_cons = check.get<double>("max_constraint", 1e-7);
    const bool pass = drift < max_drift && cons < max_cons;
    return {kind, pass, "norm drift " + fmt(drift) + ", constraint residual " + fmt(cons),
            {{"norm_drift", drift}, {"constraint", cons}, {"max_norm_drift", max_drift}, {"max_constraint", max_cons}}};
  }
  check.fail("check", "unknown check '" + kind + "'");
}

}  // namespace

PipelineResult run_pipeline(const nlohmann::json& config, const PipelineOptions& opts) {
  const Cfg root(config, "");
  if (!config.is_object()) throw Error(Errc::ConfigError, "config must be a JSON object");
  PipelineResult res;
  res.name = root.get<std::string>("name");
  const auto seed = root.get<std::uint64_t>("seed", 0);
  const unsigned saved_threads = threads();
  set_threads(opts.threads ? *opts.threads : root.get<unsigned>("threads", saved_threads));

  const Cfg cons = root.child("construct");
  const Provenance prov{cons.get<std::string>("op"), cons.get<nlohmann::json>("params", nlohmann::json::object())};
  BuildLog log;
  const RuledSurface surf = cons.guard([&] { return build_surface(prov, &log); });

  Context ctx{surf, surf.provenance(), log, opts, seed, opts.out_dir, res.artifacts};
  if (root.has("verify")) {
    const Cfg checks = root.child("verify");
    for (std::size_t k = 0; k < checks.json().size(); ++k) {
      const Cfg check = checks.item(k);
      CheckResult r = check.guard([&] { return run_check(check, ctx); });
      if (check.has("label")) r.check = check.get<std::string>("label");
      res.checks.push_back(std::move(r));
    }
  }
  res.pass = std::all_of(res.checks.begin(), res.checks.end(), [](const CheckResult& c) { return c.pass; });

  std::string report_name = res.name + ".report.json";
  if (root.has("export")) {
    const Cfg ex = root.child("export");
    report_name = ex.get<std::string>("report", report_name);
    if (ex.has("manifest")) {
      const Cfg m = ex.child("manifest");
      const auto path = opts.out_dir / m.get<std::string>("file");
      write_manifest(path, make_manifest(surf, grid_of(m)));
      res.artifacts.push_back(path);
    }
    if (ex.has("mesh")) {
      const Cfg m = ex.child("mesh");
      const SampleGrid g = grid_of(m);
      const ProjectionSpec proj =
          m.guard([&] { return projection_preset(m.get<std::string>("projection", "re"), surf, g); });
      const auto path = opts.out_dir / m.get<std::string>("file");
      export_mesh(surf, g, proj, path, MeshOptions{m.get<bool>("rulings", false)});
      res.artifacts.push_back(path);
    }
    if (ex.has("diagnostics")) {
      const auto path = opts.out_dir / ex.get<std::string>("diagnostics");
      write_text_file(path, diagnostics_csv(log.diagnostics));
      res.artifacts.push_back(path);
    }
  }

  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : res.checks) {
    checks.push_back({{"check", c.check}, {"pass", c.pass}, {"message", c.message}, {"detail", c.detail}});
  }
  nlohmann::json artifacts = nlohmann::json::array();
  for (const auto& a : res.artifacts) artifacts.push_back(a.filename().string());
  const nlohmann::json report{{"format", "ruledsl-pipeline-report"},
                              {"version", 1},
                              {"name", res.name},
                              {"construction", surf.provenance()},
                              {"checks", checks},
                              {"artifacts", artifacts},
                              {"pass", res.pass}};
  const auto report_path = opts.out_dir / report_name;
  write_json_file(report_path, report);
  res.artifacts.push_back(report_path);
  set_threads(saved_threads);
  return res;
}

PipelineResult run_pipeline_file(const std::filesystem::path& config, const PipelineOptions& opts) {
  return run_pipeline(read_json_file(config), opts);
}

}  // namespace ruledsl
