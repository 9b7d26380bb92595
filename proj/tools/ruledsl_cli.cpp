// Command-line front end: elliptic, cone, twist, borisenko, evolve, verify, pipeline.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ruledsl/bryant.hpp"
#include "ruledsl/builders.hpp"
#include "ruledsl/constructions.hpp"
#include "ruledsl/csv.hpp"
#include "ruledsl/elliptic.hpp"
#include "ruledsl/error.hpp"
#include "ruledsl/evolve.hpp"
#include "ruledsl/export_mesh.hpp"
#include "ruledsl/manifest.hpp"
#include "ruledsl/parallel.hpp"
#include "ruledsl/pipeline.hpp"
#include "ruledsl/verify.hpp"

namespace fs = std::filesystem;
using namespace ruledsl;

namespace {

struct Globals {
  std::optional<double> tol;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

std::vector<double> numbers(const std::string& text, std::size_t expect, const std::string& what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::ConfigError, what + ": bad number '" + item + "'");
    }
  }
  if (expect && out.size() != expect) {
    throw Error(Errc::ConfigError, what + ": expected " + std::to_string(expect) + " comma-separated numbers");
  }
  return out;
}

std::pair<int, int> grid_size(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw Error(Errc::ConfigError, "--grid expects NxM");
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw Error(Errc::ConfigError, "--grid expects NxM");
  }
}

SampleGrid make_grid(const std::string& size, const std::string& domain, const std::string& r) {
  const auto [ns, nt] = grid_size(size);
  const auto d = numbers(domain, 4, "--domain");
  std::vector<double> rs;
  if (!r.empty()) {
    const auto v = numbers(r, 3, "--r");
    rs = symmetric_r_values(v[0], v[1], int(v[2]));
  }
  return SampleGrid::rectangle(d[0], d[1], d[2], d[3], ns, nt, rs);
}

fs::path out_path(const Globals& g, const std::string& name) {
  const fs::path p(name);
  return p.is_absolute() ? p : fs::path(g.out_dir) / p;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

std::string joyce_spec(int b1, int b2, int b3) {
  return "joyce:" + std::to_string(b1) + "," + std::to_string(b2) + "," + std::to_string(b3);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ruled special Lagrangian 3-folds in C^3: construction and verification"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "Override the tolerance of every check");
  bool threads_given = false;
  app.add_option_function<unsigned>(
         "--threads",
         [&](unsigned n) {
           g.threads = n;
           threads_given = true;
           set_threads(n);
         },
         "Worker threads for grid evaluation")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--out-dir", g.out_dir, "Directory for relative output paths");
  int exit_code = 0;

  // elliptic eval
  auto* elliptic = app.add_subcommand("elliptic", "Jacobi elliptic functions");
  elliptic->require_subcommand(1);
  auto* ell_eval = elliptic->add_subcommand("eval", "Print sn, cn, dn as CSV");
  double ell_t = 0.0, ell_k = 0.0;
  ell_eval->add_option("--t", ell_t, "Argument")->required();
  ell_eval->add_option("--k", ell_k, "Modulus in [0, 1]")->required();
  ell_eval->callback([&] {
    const EllipticTriple e = jacobi(ell_t, ell_k);
    std::cout << elliptic_csv(ell_t, ell_k, e.sn, e.cn, e.dn);
  });

  // cone check | mesh
  auto* cone = app.add_subcommand("cone", "Cone catalog");
  cone->require_subcommand(1);
  std::string cone_kind = "hl", cone_grid = "64x64", cone_proj = "im", cone_out = "cone.obj";
  int b1 = -2, b2 = 1, b3 = 1;
  double cone_r = 1.0;
  auto add_cone_opts = [&](CLI::App* sub) {
    sub->add_option("--kind", cone_kind, "hl or joyce")->check(CLI::IsMember({"hl", "joyce"}));
    sub->add_option("--b1", b1);
    sub->add_option("--b2", b2);
    sub->add_option("--b3", b3);
    sub->add_option("--grid", cone_grid, "NxM nodes over the period cell");
  };
  auto cone_spec = [&] { return cone_kind == "hl" ? std::string("hl") : joyce_spec(b1, b2, b3); };
  auto* cone_check = cone->add_subcommand("check", "Cone condition residual report (JSON)");
  add_cone_opts(cone_check);
  cone_check->callback([&] {
    const ConePatch c = cone_from_spec(cone_spec());
    const auto [ns, nt] = grid_size(cone_grid);
    const ResidualReport r =
        cone_condition_defect(c, SampleGrid::over_lattice(*c.periods(), ns, nt), g.tol.value_or(1e-9));
    print_json(r);
    exit_code = r.pass ? 0 : 1;
  });
  auto* cone_mesh = cone->add_subcommand("mesh", "OBJ mesh of the link scaled by r");
  add_cone_opts(cone_mesh);
  cone_mesh->add_option("--r", cone_r, "Slice radius");
  cone_mesh->add_option("--projection", cone_proj)->check(CLI::IsMember({"re", "im", "pca"}));
  cone_mesh->add_option("--out", cone_out);
  cone_mesh->callback([&] {
    const ConePatch c = cone_from_spec(cone_spec());
    const auto [ns, nt] = grid_size(cone_grid);
    const SampleGrid grid = SampleGrid::over_lattice(*c.periods(), ns, nt, {cone_r});
    const RuledSurface s = lie_twist(c, HoloField{});
    const MeshStats st = export_mesh(s, grid, projection_preset(cone_proj, s, grid), out_path(g, cone_out));
    std::cout << "vertices " << st.vertices << " edges " << st.edges << " faces " << st.faces << " euler "
              << st.euler() << "\n";
  });

  // twist build
  auto* twist = app.add_subcommand("twist", "Twisted cones");
  twist->require_subcommand(1);
  auto* twist_build = twist->add_subcommand("build", "Build a twist and write its manifest");
  std::string tw_cone = "hl", tw_holo, tw_rho, tw_uv, tw_out = "twist.manifest.json", tw_grid = "17x17",
              tw_domain = "-1,1,-1,1";
  twist_build->add_option("--cone", tw_cone, "hl or joyce:b1,b2,b3");
  twist_build->add_option("--holo", tw_holo, "Coefficients c0,c1,... of p(z)");
  twist_build->add_option("--rho", tw_rho, "Eigenfunction: zero, cos_s, sin_s, cos_t, sin_t, cos_2s, cos:a,b");
  twist_build->add_option("--uv", tw_uv, "Constant field u,v");
  twist_build->add_option("--grid", tw_grid, "Sample grid NxM");
  twist_build->add_option("--domain", tw_domain, "s0,s1,t0,t1");
  twist_build->add_option("--out", tw_out);
  twist_build->callback([&] {
    if (!tw_holo.empty() && !tw_uv.empty()) throw Error(Errc::ConfigError, "--holo and --uv are exclusive");
    HoloField w = tw_holo.empty() ? HoloField{} : HoloField::parse(tw_holo);
    if (!tw_uv.empty()) {
      const auto uv = numbers(tw_uv, 2, "--uv");
      w = HoloField::constant(uv[0], uv[1]);
    }
    const ConePatch c = cone_from_spec(tw_cone);
    const SampleGrid grid = make_grid(tw_grid, tw_domain, "");
    std::optional<RuledSurface> s;
    if (!tw_rho.empty()) {
      s = combined_twist(c, w, bryant_rho(tw_rho), {grid.origin[0], grid.origin[1]}, grid,
                         g.tol.value_or(1e-8));
    } else if (c.kind() == ConeKind::HarveyLawson) {
      s = hl_twist(w);
    } else if (c.joyce() && w.is_constant()) {
      const cplx uv = w.is_zero() ? cplx(0.0) : w.coeffs().front();
      s = joyce_twist(*c.joyce(), uv.real(), uv.imag());
    } else {
      s = lie_twist(c, w);
    }
    write_manifest(out_path(g, tw_out), make_manifest(*s, grid));
  });

  // borisenko
  auto* bor = app.add_subcommand("borisenko", "Twisted normal bundle of a minimal surface");
  std::string bor_surface = "catenoid", bor_rho = "const", bor_out = "borisenko.manifest.json",
              bor_grid = "17x17", bor_domain;
  bor->add_option("--surface", bor_surface)->check(CLI::IsMember({"plane", "catenoid", "helicoid", "enneper"}));
  bor->add_option("--rho", bor_rho, "const, zero, s, t, or coefficients of p with rho = Re p");
  bor->add_option("--grid", bor_grid);
  bor->add_option("--domain", bor_domain, "s0,s1,t0,t1 (default: the surface's patch)");
  bor->add_option("--out", bor_out);
  bor->callback([&] {
    const MinimalSurfaceData data = minimal_surface(bor_surface, harmonic_rho_named(bor_rho), bor_rho);
    SampleGrid grid = data.domain;
    if (!bor_domain.empty()) {
      grid = make_grid(bor_grid, bor_domain, "");
    } else {
      const auto [ns, nt] = grid_size(bor_grid);
      grid.ns = ns;
      grid.nt = nt;
    }
    write_manifest(out_path(g, bor_out), make_manifest(borisenko(data), grid));
  });

  // evolve run
  auto* evolve_cmd = app.add_subcommand("evolve", "Curve evolution");
  evolve_cmd->require_subcommand(1);
  auto* evolve_run = evolve_cmd->add_subcommand("run", "Evolve initial curve data into a surface");
  std::string ev_init, ev_out = "evolve.manifest.json", ev_csv = "evolve.diagnostics.csv", ev_grid = "32x9";
  double ev_tmax = 0.25, ev_dt = 1e-3;
  std::size_t ev_n = 128;
  bool ev_renorm = false;
  evolve_run->add_option("--init", ev_init, "Initial-data JSON")->required()->check(CLI::ExistingFile);
  evolve_run->add_option("--tmax", ev_tmax)->required();
  evolve_run->add_option("--dt", ev_dt)->required();
  evolve_run->add_option("--n", ev_n)->required();
  evolve_run->add_flag("--renorm", ev_renorm, "Renormalize phi after each step");
  evolve_run->add_option("--grid", ev_grid, "Manifest sample grid NxM over the swept rectangle");
  evolve_run->add_option("--out", ev_out);
  evolve_run->add_option("--csv", ev_csv);
  evolve_run->callback([&] {
    const nlohmann::json init = read_json_file(ev_init);
    const nlohmann::json curve = init.contains("curve") ? init.at("curve") : init;
    Provenance prov{"evolve",
                    {{"init", curve}, {"n", ev_n}, {"tmax", ev_tmax}, {"dt", ev_dt}, {"renormalize", ev_renorm}}};
    BuildLog log;
    const RuledSurface s = build_surface(prov, &log);
    const CurveState st = curve_from_json(curve, ev_n);
    const auto [ns, nt] = grid_size(ev_grid);
    const SampleGrid grid = SampleGrid::rectangle(st.a, st.b, st.t - ev_tmax, st.t + ev_tmax, ns, nt);
    write_manifest(out_path(g, ev_out), make_manifest(s, grid));
    write_text_file(out_path(g, ev_csv), diagnostics_csv(log.diagnostics));
  });

  // verify sl | asymptotics
  auto* verify = app.add_subcommand("verify", "Certification checks");
  verify->require_subcommand(1);
  auto* verify_sl = verify->add_subcommand("sl", "Special Lagrangian residual of a surface manifest");
  std::string v_surface, v_grid, v_domain, v_r = "0.5,5,4", v_dump;
  double v_phase = 0.0;
  verify_sl->add_option("--surface", v_surface, "Surface manifest")->required()->check(CLI::ExistingFile);
  verify_sl->add_option("--grid", v_grid, "NxM (default: the manifest grid)");
  verify_sl->add_option("--domain", v_domain, "s0,s1,t0,t1 (with --grid)");
  verify_sl->add_option("--r", v_r, "lo,hi,count for r in +-[lo, hi]");
  verify_sl->add_option("--phase", v_phase, "Phase angle in degrees");
  verify_sl->add_option("--dump", v_dump, "Per-sample CSV");
  verify_sl->callback([&] {
    const Manifest m = read_manifest(v_surface);
    const RuledSurface s = build_surface(m.construction);
    SampleGrid grid = m.grid;
    if (!v_grid.empty()) {
      grid = make_grid(v_grid, v_domain.empty() ? "-1,1,-1,1" : v_domain, v_r);
    } else {
      const auto v = numbers(v_r, 3, "--r");
      grid.r_values = symmetric_r_values(v[0], v[1], int(v[2]));
    }
    const double fallback = (m.construction.op == "borisenko" || m.construction.op == "evolve") ? 1e-6 : 1e-9;
    std::vector<SlSample> dump;
    const ResidualReport r = sl_defect(s, grid, v_phase * std::numbers::pi / 180.0, g.tol.value_or(fallback),
                                       v_dump.empty() ? nullptr : &dump);
    if (!v_dump.empty()) write_text_file(out_path(g, v_dump), sl_samples_csv(dump));
    print_json(r);
    exit_code = r.pass ? 0 : 1;
  });
  auto* verify_asym = verify->add_subcommand("asymptotics", "Asymptotic order of a constant twist");
  std::string a_cone = "hl", a_uv = "1,0", a_grid = "16x16";
  double a_rmin = 1e2, a_rmax = 1e6;
  int a_decades = 4;
  verify_asym->add_option("--cone", a_cone, "hl or joyce:b1,b2,b3");
  verify_asym->add_option("--uv", a_uv, "Constant field u,v");
  verify_asym->add_option("--rmin", a_rmin);
  verify_asym->add_option("--rmax", a_rmax);
  verify_asym->add_option("--decades", a_decades, "Samples per decade of r")->check(CLI::PositiveNumber);
  verify_asym->add_option("--grid", a_grid, "NxM over the period cell");
  verify_asym->callback([&] {
    const ConePatch c = cone_from_spec(a_cone);
    const auto uv = numbers(a_uv, 2, "--uv");
    const RuledSurface s = lie_twist(c, HoloField::constant(uv[0], uv[1]));
    const auto [ns, nt] = grid_size(a_grid);
    const AsymptoticFit fit = asymptotic_order(c, s, SampleGrid::over_lattice(*c.periods(), ns, nt),
                                               geometric_r_values(a_rmin, a_rmax, a_decades));
    const double tol = g.tol.value_or(0.05);
    nlohmann::json out{{"r", fit.r}, {"distance", fit.distance}, {"exact", fit.exact}, {"slope_tolerance", tol}};
    bool pass = fit.exact;
    if (!fit.exact) {
      out["slope"] = fit.slope;
      out["fit_residual"] = fit.fit_residual;
      pass = std::abs(fit.slope + 1.0) <= tol;
    }
    out["pass"] = pass;
    print_json(out);
    exit_code = pass ? 0 : 1;
  });

  // pipeline run
  auto* pipeline = app.add_subcommand("pipeline", "Config-driven construct, verify, export");
  pipeline->require_subcommand(1);
  auto* pipeline_run = pipeline->add_subcommand("run", "Run one config");
  std::string p_config;
  pipeline_run->add_option("config", p_config, "Pipeline config JSON")->required();
  pipeline_run->callback([&] {
    PipelineOptions opts;
    opts.out_dir = g.out_dir;
    opts.tolerance = g.tol;
    if (threads_given) opts.threads = g.threads;
    const PipelineResult r = run_pipeline_file(p_config, opts);
    for (const auto& c : r.checks) std::cout << (c.pass ? "PASS " : "FAIL ") << c.check << ": " << c.message << "\n";
    exit_code = r.exit_code();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version requests exit 0; every usage error exits 2
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
