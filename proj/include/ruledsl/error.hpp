#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ruledsl {

enum class Errc {
  ZeroVector,
  ModulusOutOfRange,
  BadParams,
  NotUnitNorm,
  NotPeriodic,
  DegenerateParametrization,
  NotClosed,
  InvalidInitialData,
  BlowUp,
  BadRange,
  EmptyGrid,
  AllDegenerate,
  BadFamily,
  IoError,
  RankDeficient,
  ConfigError,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can dispatch on the kind instead of the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ruledsl
