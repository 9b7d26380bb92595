#include "ruledsl/manifest.hpp"

#include <fstream>
#include <sstream>

#include "ruledsl/error.hpp"

namespace ruledsl {
namespace {

nlohmann::json vec_json(const CVec3& v) {
  return {v[0].real(), v[0].imag(), v[1].real(), v[1].imag(), v[2].real(), v[2].imag()};
}

CVec3 vec_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 6) throw Error(Errc::ConfigError, "sample vector needs 6 numbers");
  CVec3 v;
  for (std::size_t c = 0; c < 3; ++c) v[c] = cplx(j[2 * c].get<double>(), j[2 * c + 1].get<double>());
  return v;
}

// Line and column of a byte offset.
std::string where(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Manifest make_manifest(const RuledSurface& surf, const SampleGrid& grid) {
  Manifest m;
  m.construction = surf.provenance();
  m.grid = grid;
  for (int i = 0; i < grid.ns; ++i) {
    for (int j = 0; j < grid.nt; ++j) {
      const auto [s, t] = grid.node(i, j);
      const RuledJet jet = surf.jet(s, t);
      m.samples.push_back({s, t, jet.phi, jet.psi});
    }
  }
  return m;
}

nlohmann::json to_json(const Manifest& m) {
  nlohmann::json samples = nlohmann::json::array();
  for (const SurfaceSample& smp : m.samples) {
    samples.push_back({{"s", smp.s}, {"t", smp.t}, {"phi", vec_json(smp.phi)}, {"psi", vec_json(smp.psi)}});
  }
  return {{"format", m.format},
          {"version", m.version},
          {"construction", m.construction},
          {"grid", m.grid},
          {"created_by", m.created_by},
          {"samples", samples}};
}

Manifest manifest_from_json(const nlohmann::json& j) {
  Manifest m;
  std::string field;
  try {
    field = "format";
    m.format = j.at("format").get<std::string>();
    if (m.format != kManifestFormat) throw Error(Errc::ConfigError, "field 'format': unexpected '" + m.format + "'");
    field = "version";
    m.version = j.at("version").get<int>();
    field = "construction";
    m.construction = j.at("construction").get<Provenance>();
    field = "grid";
    m.grid = j.at("grid").get<SampleGrid>();
    field = "created_by";
    m.created_by = j.value("created_by", nlohmann::json::object());
    field = "samples";
    for (const auto& s : j.value("samples", nlohmann::json::array())) {
      m.samples.push_back({s.at("s").get<double>(), s.at("t").get<double>(), vec_from(s.at("phi")),
                           vec_from(s.at("psi"))});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigError, "field '" + field + "': " + e.what());
  }
  return m;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ConfigError, path.string() + ": malformed JSON at " + where(text, e.byte ? e.byte - 1 : 0));
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

void write_manifest(const std::filesystem::path& path, const Manifest& m) { write_json_file(path, to_json(m)); }

Manifest read_manifest(const std::filesystem::path& path) { return manifest_from_json(read_json_file(path)); }

}  // namespace ruledsl
