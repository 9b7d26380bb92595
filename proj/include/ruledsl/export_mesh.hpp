#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include <Eigen/Core>

#include "ruledsl/grid.hpp"
#include "ruledsl/ruled_surface.hpp"

namespace ruledsl {

/// Linear map C^3 = R^6 -> R^3 acting on (Re z1, Re z2, Re z3, Im z1, Im z2, Im z3).
struct ProjectionSpec {
  std::string name = "re";
  Eigen::Matrix<double, 3, 6> matrix = Eigen::Matrix<double, 3, 6>::Zero();
};

ProjectionSpec projection_re();
ProjectionSpec projection_im();
/// Leading three principal axes of the sampled points of every r-slice.
ProjectionSpec projection_pca(const RuledSurface& surf, const SampleGrid& grid);
/// "re", "im" or "pca"; throws Error{ConfigError} otherwise.
ProjectionSpec projection_preset(const std::string& name, const RuledSurface& surf, const SampleGrid& grid);

struct MeshOptions {
  bool rulings = false;  // emit one OBJ line element per node across the r-slices
};

struct MeshStats {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  std::size_t lines = 0;
  long long euler() const { return (long long)vertices - (long long)edges + (long long)faces; }
};

/// OBJ text of the r-slices of the surface over the grid (r = 1 if the grid has
/// no r values). Each grid quad becomes two triangles; closed grids wrap.
/// Throws Error{IoError} for an empty grid and Error{RankDeficient} unless the
/// projection has rank 3.
std::string mesh_obj(const RuledSurface& surf, const SampleGrid& grid, const ProjectionSpec& proj,
                     const MeshOptions& opts = {}, MeshStats* stats = nullptr);

/// Writes mesh_obj to `path`; all checks run before the file is opened.
MeshStats export_mesh(const RuledSurface& surf, const SampleGrid& grid, const ProjectionSpec& proj,
                      const std::filesystem::path& path, const MeshOptions& opts = {});

}  // namespace ruledsl
