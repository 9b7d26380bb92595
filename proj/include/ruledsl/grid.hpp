#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <json.hpp>

namespace ruledsl {

/// Lattice of periods in the (s, t)-plane.
struct Lattice {
  std::array<double, 2> g1{};
  std::array<double, 2> g2{};
};

/// Sampling of a parallelogram in the (s, t)-plane, optionally with a list
/// of ruling parameters r.
///
/// Node (i, j) sits at origin + a_i * edge_s + b_j * edge_t. An open grid
/// includes both ends (a_i = i / (ns - 1)); a closed grid is periodic and
/// omits the far end (a_i = i / ns).
struct SampleGrid {
  std::array<double, 2> origin{0.0, 0.0};
  std::array<double, 2> edge_s{1.0, 0.0};
  std::array<double, 2> edge_t{0.0, 1.0};
  int ns = 0;
  int nt = 0;
  bool closed = false;
  std::vector<double> r_values;

  static SampleGrid rectangle(double s0, double s1, double t0, double t1, int ns, int nt,
                              std::vector<double> r_values = {});
  static SampleGrid over_lattice(const Lattice& lattice, int ns, int nt,
                                 std::vector<double> r_values = {});

  bool empty() const { return ns <= 0 || nt <= 0; }
  std::size_t node_count() const { return empty() ? 0 : std::size_t(ns) * std::size_t(nt); }
  std::array<double, 2> node(int i, int j) const;
  std::size_t index(int i, int j) const { return std::size_t(i) * std::size_t(nt) + std::size_t(j); }
};

/// r in +-[lo, hi], `count` values per sign, geometrically spaced when lo > 0.
std::vector<double> symmetric_r_values(double lo, double hi, int count);
/// rmin .. rmax, `per_decade` samples per decade, geometric.
std::vector<double> geometric_r_values(double rmin, double rmax, int per_decade);

void to_json(nlohmann::json& j, const SampleGrid& g);
/// Accepts the form written by to_json or {"rect": [s0, s1, t0, t1], "ns", "nt"}.
/// "r" is a list, {"symmetric": [lo, hi, count]} or
/// {"geometric": [rmin, rmax, per_decade]}.
void from_json(const nlohmann::json& j, SampleGrid& g);

}  // namespace ruledsl
