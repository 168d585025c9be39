#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrs {

/// Error codes for everything the library can reject. The first group maps to
/// CLI exit code 1 (input/spec problems), the second to exit code 2 (geometric
/// failures).
enum class Errc {
  ParseError,
  UnknownFunction,
  UnboundParameter,
  BadSpec,
  EvalError,
  IoError,
  Usage,

  NullVector,
  NotUnitDirector,
  NotArcLength,
  CausalClassChange,
  NullDirectorDerivative,
  NullFrameVector,
  FrameResidual,
  NullRulingDerivative,
  StrictionResidual,
  DegenerateMetric,
  NullNormal,
  NullTangent,
  NullBinormalDirection,
  PrintedDenominatorZero,
  EmptyGrid,
  Developable,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownFunction: return "UnknownFunction";
    case Errc::UnboundParameter: return "UnboundParameter";
    case Errc::BadSpec: return "BadSpec";
    case Errc::EvalError: return "EvalError";
    case Errc::IoError: return "IoError";
    case Errc::Usage: return "Usage";
    case Errc::NullVector: return "NullVector";
    case Errc::NotUnitDirector: return "NotUnitDirector";
    case Errc::NotArcLength: return "NotArcLength";
    case Errc::CausalClassChange: return "CausalClassChange";
    case Errc::NullDirectorDerivative: return "NullDirectorDerivative";
    case Errc::NullFrameVector: return "NullFrameVector";
    case Errc::FrameResidual: return "FrameResidual";
    case Errc::NullRulingDerivative: return "NullRulingDerivative";
    case Errc::StrictionResidual: return "StrictionResidual";
    case Errc::DegenerateMetric: return "DegenerateMetric";
    case Errc::NullNormal: return "NullNormal";
    case Errc::NullTangent: return "NullTangent";
    case Errc::NullBinormalDirection: return "NullBinormalDirection";
    case Errc::PrintedDenominatorZero: return "PrintedDenominatorZero";
    case Errc::EmptyGrid: return "EmptyGrid";
    case Errc::Developable: return "Developable";
  }
  return "UnknownError";
}

/// 1 for spec/input errors, 2 for geometric errors.
constexpr int errc_exit_code(Errc c) {
  switch (c) {
    case Errc::ParseError:
    case Errc::UnknownFunction:
    case Errc::UnboundParameter:
    case Errc::BadSpec:
    case Errc::EvalError:
    case Errc::IoError:
    case Errc::Usage:
      return 1;
    default:
      return 2;
  }
}

class Error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Error(Errc code, const std::string& message, std::size_t position = npos)
      : std::runtime_error(message), code_(code), position_(position) {}

  Errc code() const noexcept { return code_; }

  /// Byte offset into the offending text, or npos when not applicable.
  std::size_t position() const noexcept { return position_; }

  int exit_code() const noexcept { return errc_exit_code(code_); }

 private:
  Errc code_;
  std::size_t position_;
};

}  // namespace mrs
