#include "ruledsl/export_mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <utility>

#include <Eigen/Dense>

#include "ruledsl/error.hpp"
#include "ruledsl/manifest.hpp"
#include "ruledsl/parallel.hpp"

namespace ruledsl {
namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;

Vec6 real6(const CVec3& v) {
  Vec6 x;
  x << v[0].real(), v[1].real(), v[2].real(), v[0].imag(), v[1].imag(), v[2].imag();
  return x;
}

std::vector<double> slices(const SampleGrid& grid) {
  return grid.r_values.empty() ? std::vector<double>{1.0} : grid.r_values;
}

// Points of every r-slice, slice-major then node order.
std::vector<Vec6> sample_points(const RuledSurface& surf, const SampleGrid& grid) {
  const std::vector<double> rs = slices(grid);
  const std::size_t nodes = grid.node_count();
  std::vector<RuledJet> jets(nodes);
  parallel_for(nodes, [&](std::size_t k) {
    const auto [s, t] = grid.node(int(k / std::size_t(grid.nt)), int(k % std::size_t(grid.nt)));
    jets[k] = surf.jet(s, t);
  });
  std::vector<Vec6> out;
  out.reserve(rs.size() * nodes);
  for (double r : rs) {
    for (const RuledJet& j : jets) out.push_back(real6(r * j.phi + j.psi));
  }
  return out;
}

void check_inputs(const SampleGrid& grid, const ProjectionSpec& proj) {
  if (grid.empty()) throw Error(Errc::IoError, "refusing to export an empty grid");
  const auto sv = proj.matrix.jacobiSvd().singularValues();
  if (!(sv(0) > 0.0) || sv(2) < 1e-10 * sv(0)) {
    throw Error(Errc::RankDeficient, "projection '" + proj.name + "' has rank < 3");
  }
}

}  // namespace

ProjectionSpec projection_re() {
  ProjectionSpec p{"re", {}};
  p.matrix.setZero();
  for (int c = 0; c < 3; ++c) p.matrix(c, c) = 1.0;
  return p;
}

ProjectionSpec projection_im() {
  ProjectionSpec p{"im", {}};
  p.matrix.setZero();
  for (int c = 0; c < 3; ++c) p.matrix(c, 3 + c) = 1.0;
  return p;
}

ProjectionSpec projection_pca(const RuledSurface& surf, const SampleGrid& grid) {
  if (grid.empty()) throw Error(Errc::IoError, "empty grid");
  const std::vector<Vec6> pts = sample_points(surf, grid);
  Vec6 mean = Vec6::Zero();
  for (const Vec6& p : pts) mean += p;
  mean /= double(pts.size());
  Eigen::Matrix<double, 6, 6> cov = Eigen::Matrix<double, 6, 6>::Zero();
  for (const Vec6& p : pts) cov += (p - mean) * (p - mean).transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> eig(cov);
  ProjectionSpec out{"pca", {}};
  for (int row = 0; row < 3; ++row) {
    Vec6 axis = eig.eigenvectors().col(5 - row);
    Eigen::Index big = 0;
    axis.cwiseAbs().maxCoeff(&big);
    if (axis(big) < 0.0) axis = -axis;
    out.matrix.row(row) = axis.transpose();
  }
  return out;
}

ProjectionSpec projection_preset(const std::string& name, const RuledSurface& surf, const SampleGrid& grid) {
  if (name == "re") return projection_re();
  if (name == "im") return projection_im();
  if (name == "pca") return projection_pca(surf, grid);
  throw Error(Errc::ConfigError, "unknown projection '" + name + "'");
}

std::string mesh_obj(const RuledSurface& surf, const SampleGrid& grid, const ProjectionSpec& proj,
                     const MeshOptions& opts, MeshStats* stats) {
  check_inputs(grid, proj);
  const std::vector<double> rs = slices(grid);
  const std::vector<Vec6> pts = sample_points(surf, grid);
  const std::size_t nodes = grid.node_count();
  const int ns = grid.ns;
  const int nt = grid.nt;

  std::string out = "# ruledsl mesh v1\n# projection " + proj.name + "\n";
  char buf[128];
  for (const Vec6& p : pts) {
    const Eigen::Vector3d q = proj.matrix * p;
    std::snprintf(buf, sizeof buf, "v %.12g %.12g %.12g\n", q(0), q(1), q(2));
    out += buf;
  }

  MeshStats st;
  st.vertices = pts.size();
  std::set<std::pair<std::size_t, std::size_t>> edges;
  auto edge = [&](std::size_t a, std::size_t b) { edges.insert({std::min(a, b), std::max(a, b)}); };
  const int qi = grid.closed ? ns : ns - 1;
  const int qj = grid.closed ? nt : nt - 1;
  for (std::size_t slice = 0; slice < rs.size(); ++slice) {
    // OBJ indices are 1-based
    auto vid = [&](int i, int j) { return slice * nodes + grid.index(i % ns, j % nt) + 1; };
    for (int i = 0; i < qi; ++i) {
      for (int j = 0; j < qj; ++j) {
        const std::size_t a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
        if (a == b || a == d) continue;  // collapsed by wrapping a one-node direction
        std::snprintf(buf, sizeof buf, "f %zu %zu %zu\nf %zu %zu %zu\n", a, b, c, a, c, d);
        out += buf;
        st.faces += 2;
        edge(a, b);
        edge(b, c);
        edge(c, a);
        edge(c, d);
        edge(d, a);
      }
    }
  }
  st.edges = edges.size();
  if (opts.rulings && rs.size() > 1) {
    for (std::size_t k = 0; k < nodes; ++k) {
      out += "l";
      for (std::size_t slice = 0; slice < rs.size(); ++slice) out += " " + std::to_string(slice * nodes + k + 1);
      out += "\n";
      ++st.lines;
    }
  }
  if (stats) *stats = st;
  return out;
}

MeshStats export_mesh(const RuledSurface& surf, const SampleGrid& grid, const ProjectionSpec& proj,
                      const std::filesystem::path& path, const MeshOptions& opts) {
  MeshStats st;
  const std::string text = mesh_obj(surf, grid, proj, opts, &st);
  write_text_file(path, text);
  return st;
}

}  // namespace ruledsl
