#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ruledsl {

struct PipelineOptions {
  std::filesystem::path out_dir = ".";
  std::optional<double> tolerance;  // overrides every check's tolerance
  std::optional<unsigned> threads;  // overrides the config
};

struct CheckResult {
  std::string check;
  bool pass = false;
  std::string message;
  nlohmann::json detail;
};

struct PipelineResult {
  std::string name;
  std::vector<CheckResult> checks;
  std::vector<std::filesystem::path> artifacts;
  bool pass = false;
  int exit_code() const { return pass ? 0 : 1; }
};

/// Runs construct -> verify -> export as declared in `config`. Relative output
/// paths are resolved against opts.out_dir. Throws Error{ConfigError} naming
/// the offending field (as a JSON pointer) for invalid configs.
PipelineResult run_pipeline(const nlohmann::json& config, const PipelineOptions& opts = {});

/// Reads the config file first; malformed JSON is reported with line/column.
PipelineResult run_pipeline_file(const std::filesystem::path& config, const PipelineOptions& opts = {});

}  // namespace ruledsl
