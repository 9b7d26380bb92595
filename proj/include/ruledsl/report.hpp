#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

namespace ruledsl {

struct ConditionStats {
  std::string name;
  double max = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
};

struct SampleLocation {
  double s = 0.0;
  double t = 0.0;
  double r = 0.0;
};

/// Per-condition max/mean defects over a sample grid.
/// Invariants: max >= mean >= 0 for every condition; pass iff every max < tolerance.
struct ResidualReport {
  std::string check;
  std::vector<ConditionStats> conditions;
  std::size_t samples = 0;
  std::size_t non_immersion_samples = 0;
  std::size_t degenerate_direction_samples = 0;
  double tolerance = 0.0;
  bool pass = false;
  SampleLocation worst;
  std::vector<std::string> warnings;

  double max_defect() const;
  const ConditionStats& condition(const std::string& name) const;
};

/// Accumulates defects sample by sample in a fixed order, so the report is
/// independent of how the samples were computed.
class ReportBuilder {
 public:
  ReportBuilder(std::string check, std::vector<std::string> condition_names);

  /// Records one sample; values[i] belongs to condition i.
  void add(const std::vector<double>& values, SampleLocation where);
  void add_non_immersion() { ++non_immersion_; }
  void add_degenerate_direction() { ++degenerate_direction_; }
  void warn(std::string message);

  ResidualReport finish(double tolerance) const;

 private:
  std::string check_;
  std::vector<ConditionStats> stats_;
  std::vector<double> sums_;
  std::size_t samples_ = 0;
  std::size_t non_immersion_ = 0;
  std::size_t degenerate_direction_ = 0;
  double worst_value_ = -1.0;
  SampleLocation worst_;
  std::vector<std::string> warnings_;
};

void to_json(nlohmann::json& j, const ResidualReport& r);

}  // namespace ruledsl
