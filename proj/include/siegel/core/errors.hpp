#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

enum class Errc {
  NotEven,
  Degenerate,
  NotSymmetric,
  DimensionMismatch,
  SizeExceeded,
  ConductorMismatch,
  MilgramViolation,
  PrecisionExhausted,
  NotUnimodular,
  BoundExceeded,
  NotInParabolic,
  GenusUnsupported,
  NonconvergentWeight,
  ParityMismatch,
  NonPositiveIndex,
  WeightTooSmall,
  InvalidKey,
  Overflow,
  ParseError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotEven: return "NotEven";
    case Errc::Degenerate: return "Degenerate";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SizeExceeded: return "SizeExceeded";
    case Errc::ConductorMismatch: return "ConductorMismatch";
    case Errc::MilgramViolation: return "MilgramViolation";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::NotUnimodular: return "NotUnimodular";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::NotInParabolic: return "NotInParabolic";
    case Errc::GenusUnsupported: return "GenusUnsupported";
    case Errc::NonconvergentWeight: return "NonconvergentWeight";
    case Errc::ParityMismatch: return "ParityMismatch";
    case Errc::NonPositiveIndex: return "NonPositiveIndex";
    case Errc::WeightTooSmall: return "WeightTooSmall";
    case Errc::InvalidKey: return "InvalidKey";
    case Errc::Overflow: return "Overflow";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every domain failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code), detail_(msg) {}
  Errc code() const noexcept { return code_; }
  const char* kind() const noexcept { return errc_name(code_); }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace siegel
