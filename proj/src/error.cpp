#include "ruledsl/error.hpp"

namespace ruledsl {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::ModulusOutOfRange: return "ModulusOutOfRange";
    case Errc::BadParams: return "BadParams";
    case Errc::NotUnitNorm: return "NotUnitNorm";
    case Errc::NotPeriodic: return "NotPeriodic";
    case Errc::DegenerateParametrization: return "DegenerateParametrization";
    case Errc::NotClosed: return "NotClosed";
    case Errc::InvalidInitialData: return "InvalidInitialData";
    case Errc::BlowUp: return "BlowUp";
    case Errc::BadRange: return "BadRange";
    case Errc::EmptyGrid: return "EmptyGrid";
    case Errc::AllDegenerate: return "AllDegenerate";
    case Errc::BadFamily: return "BadFamily";
    case Errc::IoError: return "IoError";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace ruledsl
