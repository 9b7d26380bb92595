#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ruledsl/grid.hpp"
#include "ruledsl/ruled_surface.hpp"

namespace ruledsl {

inline constexpr const char* kManifestFormat = "ruledsl-manifest";
inline constexpr int kManifestVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// (phi, psi) at one grid node.
struct SurfaceSample {
  double s = 0.0;
  double t = 0.0;
  CVec3 phi, psi;
  friend bool operator==(const SurfaceSample&, const SurfaceSample&) = default;
};

/// Construction record of a surface plus its samples on a grid. Doubles are
/// written as shortest round-trip decimals, so write then read is bit-exact.
struct Manifest {
  std::string format = kManifestFormat;
  int version = kManifestVersion;
  Provenance construction;
  SampleGrid grid;
  nlohmann::json created_by = {{"tool", "ruledsl"}, {"version", kToolVersion}};
  std::vector<SurfaceSample> samples;
};

/// Samples `surf` at every node of `grid`.
Manifest make_manifest(const RuledSurface& surf, const SampleGrid& grid);

nlohmann::json to_json(const Manifest& m);
/// Throws Error{ConfigError} naming the offending field.
Manifest manifest_from_json(const nlohmann::json& j);

/// Reads a JSON file; malformed input throws Error{ConfigError} with the line
/// and column, a missing file Error{IoError}.
nlohmann::json read_json_file(const std::filesystem::path& path);
/// Pretty-prints with two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

void write_manifest(const std::filesystem::path& path, const Manifest& m);
Manifest read_manifest(const std::filesystem::path& path);

}  // namespace ruledsl
