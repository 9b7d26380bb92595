#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "ruledsl/builders.hpp"
#include "ruledsl/constructions.hpp"
#include "ruledsl/csv.hpp"
#include "ruledsl/error.hpp"
#include "ruledsl/export_mesh.hpp"
#include "ruledsl/manifest.hpp"
#include "ruledsl/parallel.hpp"
#include "ruledsl/pipeline.hpp"

using namespace ruledsl;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = RULEDSL_SOURCE_DIR;
const fs::path kData = RULEDSL_TEST_DATA;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "ruledsl_tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  return out;
}

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  return Error(Errc::BadParams, "no error");
}

}  // namespace

TEST_CASE("manifest round trip is bit exact") {
  const RuledSurface surf = joyce_twist(JoyceParams::make(-3, 2, 1), 0.3, -1.0 / 3.0);
  const SampleGrid grid = SampleGrid::rectangle(-0.3, 1.7, 0.1, 2.9, 7, 5);
  const Manifest m = make_manifest(surf, grid);
  const fs::path p = scratch("manifest") / "m.json";
  write_manifest(p, m);
  const Manifest back = read_manifest(p);
  CHECK(back.samples == m.samples);
  CHECK(back.construction.op == "joyce_twist");
  CHECK(back.grid.ns == 7);
  const nlohmann::json j = read_json_file(p);
  CHECK(j["format"] == "ruledsl-manifest");
  CHECK(j["version"] == 1);
  CHECK(j["created_by"]["tool"] == "ruledsl");
  CHECK(j["samples"][0]["phi"].size() == 6u);

  // the recorded construction rebuilds the same surface
  const RuledSurface rebuilt = build_surface(back.construction);
  CHECK(make_manifest(rebuilt, grid).samples == m.samples);
}

TEST_CASE("manifest errors name the field") {
  nlohmann::json j = to_json(make_manifest(hl_twist(HoloField::monomial(1)), SampleGrid::rectangle(0, 1, 0, 1, 2, 2)));
  j.erase("grid");
  const Error e = error_of([&] { manifest_from_json(j); });
  CHECK(e.code() == Errc::ConfigError);
  CHECK(std::string(e.what()).find("grid") != std::string::npos);
  CHECK(error_of([] { read_manifest("/nonexistent/file.json"); }).code() == Errc::IoError);
}

TEST_CASE("malformed JSON reports its position") {
  const Error e = error_of([] { read_json_file(kData / "malformed.json"); });
  CHECK(e.code() == Errc::ConfigError);
  CHECK(std::string(e.what()).find("line 3") != std::string::npos);
}

TEST_CASE("torus mesh has Euler characteristic zero") {
  const ConePatch hl = hl_cone();
  const SampleGrid g = SampleGrid::over_lattice(*hl.periods(), 24, 24, {1.0});
  MeshStats stats;
  const std::string obj = mesh_obj(lie_twist(hl, HoloField()), g, projection_im(), {}, &stats);
  CHECK(obj.rfind("# ruledsl mesh v1", 0) == 0);
  CHECK(stats.vertices == 24u * 24u);
  CHECK(stats.faces == 2u * 24u * 24u);
  CHECK(stats.euler() == 0);

  const SampleGrid open = SampleGrid::rectangle(-1, 1, -1, 1, 5, 4, {1.0, 2.0});
  MeshStats disk;
  mesh_obj(hl_twist(HoloField::monomial(2)), open, projection_re(), {true}, &disk);
  CHECK(disk.euler() == 2);  // two disks
  CHECK(disk.lines == 20u);
}

TEST_CASE("mesh export errors") {
  const RuledSurface surf = hl_twist(HoloField::monomial(2));
  const SampleGrid g = SampleGrid::rectangle(-1, 1, -1, 1, 5, 5);
  ProjectionSpec flat;
  flat.matrix(0, 0) = 1.0;
  flat.matrix(1, 1) = 1.0;
  CHECK(error_of([&] { mesh_obj(surf, g, flat); }).code() == Errc::RankDeficient);
  const fs::path out = scratch("mesh") / "empty.obj";
  CHECK(error_of([&] { export_mesh(surf, SampleGrid{}, projection_re(), out); }).code() == Errc::IoError);
  CHECK_FALSE(fs::exists(out));
  CHECK(error_of([&] { projection_preset("xy", surf, g); }).code() == Errc::ConfigError);
  const ProjectionSpec pca = projection_pca(surf, SampleGrid::rectangle(-1, 1, -1, 1, 5, 5, {1.0, 3.0}));
  CHECK((pca.matrix * pca.matrix.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-12);
}

TEST_CASE("csv headers") {
  CHECK(diagnostics_csv({{0.5, 1e-16, 2e-15, 0.0}}).rfind("# ruledsl evolve diagnostics v1\nt,norm_drift,omega_phi_dphi,omega_phi_dpsi\n0.5,", 0) == 0);
  CHECK(sl_samples_csv({}).rfind("# ruledsl sl samples v1\ns,t,r,lagrangian,special,immersed\n", 0) == 0);
  CHECK(elliptic_csv(1, 0, 0.1, 0.2, 0.3).find("t,k,sn,cn,dn\n1,0,0.10000000000000001,") != std::string::npos);
}

TEST_CASE("builders") {
  CHECK(cone_from_spec("joyce(-3,2,1)").joyce()->b1 == -3);
  CHECK(cone_from_spec("joyce:-2,1,1").label() == cone_from_spec("joyce(-2,1,1)").label());
  CHECK(error_of([] { cone_from_spec("sphere"); }).code() == Errc::ConfigError);
  CHECK(holo_from_json(nlohmann::json::parse(R"([1, [0, 2]])")).coeffs()[1] == cplx(0, 2));
  const SampleGrid g = grid_from_json(nlohmann::json::parse(R"({"lattice": "hl", "ns": 4, "nt": 4})"));
  CHECK(g.closed);
  CHECK(error_of([] { build_surface(Provenance{"spiral", {}}); }).code() == Errc::ConfigError);
}

TEST_CASE("shipped configs pass and are byte-identical across runs and thread counts") {
  for (std::string name : {"hl_z2", "joyce_m2_1_1", "borisenko_catenoid", "evolve_hl"}) {
    const fs::path cfg = kSource / "manifests" / (name + ".json");
    const fs::path a = scratch(name + "_a"), b = scratch(name + "_b");
    PipelineOptions oa{a, std::nullopt, 1u}, ob{b, std::nullopt, 4u};
    const PipelineResult ra = run_pipeline_file(cfg, oa);
    const PipelineResult rb = run_pipeline_file(cfg, ob);
    CHECK_MESSAGE(ra.exit_code() == 0, name);
    CHECK(rb.exit_code() == 0);
    const auto ta = tree(a), tb = tree(b);
    CHECK(ta.size() >= 2u);
    CHECK_MESSAGE(ta == tb, name);
    const nlohmann::json report = read_json_file(a / (name + ".report.json"));
    CHECK(report["format"] == "ruledsl-pipeline-report");
  }
  set_threads(1);
}

TEST_CASE("tight tolerance is an honest failure") {
  const PipelineResult r = run_pipeline_file(kData / "borisenko_tight.json", {scratch("tight"), std::nullopt, 1u});
  CHECK(r.exit_code() == 1);
  REQUIRE(r.checks.size() == 1u);
  CHECK_FALSE(r.checks[0].pass);
  CHECK(r.checks[0].message.find("condition '") != std::string::npos);
  CHECK(r.checks[0].message.find(">= tolerance 1e-15") != std::string::npos);
}

TEST_CASE("invalid configs name the offending field") {
  const nlohmann::json base = read_json_file(kSource / "manifests" / "hl_z2.json");
  nlohmann::json bad_check = base;
  bad_check["verify"][1]["check"] = "volume";
  const Error e1 = error_of([&] { run_pipeline(bad_check, {scratch("cfg1")}); });
  CHECK(e1.code() == Errc::ConfigError);
  CHECK(std::string(e1.what()).find("/verify/1") != std::string::npos);

  nlohmann::json missing = base;
  missing["construct"].erase("op");
  const Error e2 = error_of([&] { run_pipeline(missing, {scratch("cfg2")}); });
  CHECK(e2.code() == Errc::ConfigError);
  CHECK(std::string(e2.what()).find("/construct") != std::string::npos);

  CHECK(error_of([] { run_pipeline_file(kData / "malformed.json", {scratch("cfg3")}); }).code() == Errc::ConfigError);
}
