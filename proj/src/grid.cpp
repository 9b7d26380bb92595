#include "ruledsl/grid.hpp"

#include <cmath>

#include "ruledsl/error.hpp"

namespace ruledsl {

SampleGrid SampleGrid::rectangle(double s0, double s1, double t0, double t1, int ns, int nt,
                                 std::vector<double> r_values) {
  SampleGrid g;
  g.origin = {s0, t0};
  g.edge_s = {s1 - s0, 0.0};
  g.edge_t = {0.0, t1 - t0};
  g.ns = ns;
  g.nt = nt;
  g.r_values = std::move(r_values);
  return g;
}

SampleGrid SampleGrid::over_lattice(const Lattice& lattice, int ns, int nt,
                                    std::vector<double> r_values) {
  SampleGrid g;
  g.edge_s = lattice.g1;
  g.edge_t = lattice.g2;
  g.ns = ns;
  g.nt = nt;
  g.closed = true;
  g.r_values = std::move(r_values);
  return g;
}

std::array<double, 2> SampleGrid::node(int i, int j) const {
  auto frac = [this](int k, int n) {
    if (closed) return double(k) / double(n);
    return n > 1 ? double(k) / double(n - 1) : 0.0;
  };
  const double a = frac(i, ns);
  const double b = frac(j, nt);
  return {origin[0] + a * edge_s[0] + b * edge_t[0], origin[1] + a * edge_s[1] + b * edge_t[1]};
}

std::vector<double> symmetric_r_values(double lo, double hi, int count) {
  if (count <= 0) return {};
  std::vector<double> pos;
  for (int k = 0; k < count; ++k) {
    const double f = count > 1 ? double(k) / double(count - 1) : 0.0;
    pos.push_back(lo > 0.0 ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo));
  }
  std::vector<double> out;
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(-*it);
  for (double r : pos) {
    if (r != 0.0 || out.empty() || out.back() != 0.0) out.push_back(r);
  }
  return out;
}

std::vector<double> geometric_r_values(double rmin, double rmax, int per_decade) {
  if (!(rmin > 0.0 && rmax > rmin) || per_decade <= 0) {
    throw Error(Errc::BadRange, "geometric r range needs 0 < rmin < rmax");
  }
  const double decades = std::log10(rmax / rmin);
  const int steps = std::max(1, int(std::lround(decades * per_decade)));
  std::vector<double> out;
  for (int k = 0; k <= steps; ++k) out.push_back(rmin * std::pow(rmax / rmin, double(k) / steps));
  return out;
}

void to_json(nlohmann::json& j, const SampleGrid& g) {
  j = nlohmann::json{{"origin", g.origin}, {"edge_s", g.edge_s}, {"edge_t", g.edge_t},
                     {"ns", g.ns},         {"nt", g.nt},         {"closed", g.closed},
                     {"r", g.r_values}};
}

void from_json(const nlohmann::json& j, SampleGrid& g) {
  g = SampleGrid{};
  if (j.contains("rect")) {
    const auto& r = j.at("rect");
    g = SampleGrid::rectangle(r.at(0), r.at(1), r.at(2), r.at(3), j.at("ns"), j.at("nt"));
  } else {
    j.at("origin").get_to(g.origin);
    j.at("edge_s").get_to(g.edge_s);
    j.at("edge_t").get_to(g.edge_t);
    j.at("ns").get_to(g.ns);
    j.at("nt").get_to(g.nt);
    g.closed = j.value("closed", false);
  }
  if (j.contains("r")) {
    const auto& r = j.at("r");
    if (r.is_object() && r.contains("symmetric")) {
      const auto& a = r.at("symmetric");
      g.r_values = symmetric_r_values(a.at(0), a.at(1), a.at(2));
    } else if (r.is_object() && r.contains("geometric")) {
      const auto& a = r.at("geometric");
      g.r_values = geometric_r_values(a.at(0), a.at(1), a.at(2));
    } else {
      r.get_to(g.r_values);
    }
  }
}

}  // namespace ruledsl
