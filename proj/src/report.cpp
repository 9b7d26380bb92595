#include "ruledsl/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace ruledsl {

double ResidualReport::max_defect() const {
  double m = 0.0;
  for (const auto& c : conditions) m = std::max(m, c.max);
  return m;
}

const ConditionStats& ResidualReport::condition(const std::string& name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no condition named " + name);
}

ReportBuilder::ReportBuilder(std::string check, std::vector<std::string> condition_names)
    : check_(std::move(check)), sums_(condition_names.size(), 0.0) {
  for (auto& n : condition_names) stats_.push_back(ConditionStats{std::move(n)});
}

void ReportBuilder::add(const std::vector<double>& values, SampleLocation where) {
  ++samples_;
  double sample_max = 0.0;
  for (std::size_t i = 0; i < stats_.size(); ++i) {
    const double v = values.at(i);
    stats_[i].max = std::max(stats_[i].max, v);
    sums_[i] += v;
    ++stats_[i].count;
    sample_max = std::max(sample_max, v);
  }
  if (sample_max > worst_value_) {
    worst_value_ = sample_max;
    worst_ = where;
  }
}

void ReportBuilder::warn(std::string message) {
  if (std::find(warnings_.begin(), warnings_.end(), message) == warnings_.end()) {
    warnings_.push_back(std::move(message));
  }
}

ResidualReport ReportBuilder::finish(double tolerance) const {
  ResidualReport r;
  r.check = check_;
  r.conditions = stats_;
  for (std::size_t i = 0; i < stats_.size(); ++i) {
    if (stats_[i].count > 0) {
      // summation error can push the mean a hair above the max
      r.conditions[i].mean = std::min(stats_[i].max, sums_[i] / double(stats_[i].count));
    }
  }
  r.samples = samples_;
  r.non_immersion_samples = non_immersion_;
  r.degenerate_direction_samples = degenerate_direction_;
  r.tolerance = tolerance;
  r.worst = worst_;
  r.warnings = warnings_;
  r.pass = samples_ > 0 && r.max_defect() < tolerance;
  return r;
}

void to_json(nlohmann::json& j, const ResidualReport& r) {
  nlohmann::json conds = nlohmann::json::array();
  for (const auto& c : r.conditions) {
    conds.push_back({{"name", c.name}, {"max", c.max}, {"mean", c.mean}, {"count", c.count}});
  }
  j = nlohmann::json{{"check", r.check},
                     {"conditions", conds},
                     {"samples", r.samples},
                     {"non_immersion_samples", r.non_immersion_samples},
                     {"degenerate_direction_samples", r.degenerate_direction_samples},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass},
                     {"max_defect", r.max_defect()},
                     {"worst", {{"s", r.worst.s}, {"t", r.worst.t}, {"r", r.worst.r}}},
                     {"warnings", r.warnings}};
}

}  // namespace ruledsl
