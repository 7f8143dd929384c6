#pragma once

#include <stdexcept>
#include <string>

namespace rfad {

enum class Errc {
  ZeroPowerSignal,
  NoTrigger,
  InputTooShort,
  TooShort,
  EmptyPacket,
  ShapeError,
  ConfigError,
  EmptyEval,
  DimensionMismatch,
  NotEnoughTrainingData,
  NonFiniteFeature,
  LengthMismatch,
  Empty,
  EmptyMatrix,
  InvalidSignal,
  CorruptFile,
  IoError,
  ContractViolation,
};

const char *to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the Errc codes so
/// callers (and tests) can branch on the kind instead of the message.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

inline const char *to_string(Errc code) noexcept {
  switch (code) {
  case Errc::ZeroPowerSignal: return "ZeroPowerSignal";
  case Errc::NoTrigger: return "NoTrigger";
  case Errc::InputTooShort: return "InputTooShort";
  case Errc::TooShort: return "TooShort";
  case Errc::EmptyPacket: return "EmptyPacket";
  case Errc::ShapeError: return "ShapeError";
  case Errc::ConfigError: return "ConfigError";
  case Errc::EmptyEval: return "EmptyEval";
  case Errc::DimensionMismatch: return "DimensionMismatch";
  case Errc::NotEnoughTrainingData: return "NotEnoughTrainingData";
  case Errc::NonFiniteFeature: return "NonFiniteFeature";
  case Errc::LengthMismatch: return "LengthMismatch";
  case Errc::Empty: return "Empty";
  case Errc::EmptyMatrix: return "EmptyMatrix";
  case Errc::InvalidSignal: return "InvalidSignal";
  case Errc::CorruptFile: return "CorruptFile";
  case Errc::IoError: return "IoError";
  case Errc::ContractViolation: return "ContractViolation";
  }
  return "Unknown";
}

} // namespace rfad
