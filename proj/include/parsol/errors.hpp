#pragma once

#include <stdexcept>
#include <string>

namespace parsol {

/// Error codes shared by the library and the CLI's machine-readable
/// `ERROR <code> <detail>` lines.
enum class Errc {
  DimensionMismatch,
  InvalidBandwidth,
  CornerForbidden,
  TooLargeForDense,
  InvalidParameter,
  ParseError,
  UnsupportedVersion,
  TooManyPartitions,
  UnsupportedKind,
  UnsupportedStructure,
  IndexOutOfRange,
  ZeroPivot,
  SingularBlock,
  SingularFactor,
  SingularReducedSystem,
  SingularWindow,
  ExhaustedBody,
  StepTooLarge,
  InvalidInterval,
  ExpmFailure,
  NotConverged,
  IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  Errc code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
  throw Error(code, detail);
}

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidBandwidth: return "InvalidBandwidth";
    case Errc::CornerForbidden: return "CornerForbidden";
    case Errc::TooLargeForDense: return "TooLargeForDense";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::ParseError: return "ParseError";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::TooManyPartitions: return "TooManyPartitions";
    case Errc::UnsupportedKind: return "UnsupportedKind";
    case Errc::UnsupportedStructure: return "UnsupportedStructure";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ZeroPivot: return "ZeroPivot";
    case Errc::SingularBlock: return "SingularBlock";
    case Errc::SingularFactor: return "SingularFactor";
    case Errc::SingularReducedSystem: return "SingularReducedSystem";
    case Errc::SingularWindow: return "SingularWindow";
    case Errc::ExhaustedBody: return "ExhaustedBody";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::InvalidInterval: return "InvalidInterval";
    case Errc::ExpmFailure: return "ExpmFailure";
    case Errc::NotConverged: return "NotConverged";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace parsol
