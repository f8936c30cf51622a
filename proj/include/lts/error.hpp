// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <stdexcept>
#include <string>

namespace lts {

enum class ErrorKind {
  NonRepresentable,
  UnsynchronizedStart,
  NonMonotonic,
  UnknownSet,
  DuplicateNodes,
  NonMonotonicTimes,
  InsufficientHistory,
  UndefinedStep,
  WrongSetCount,
  WrongKind,
  MissingCouplingRecord,
  MissingTrace,
  OutOfDomain,
  ParseError,
  InvalidArgument,
};

inline const char* name(const ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonRepresentable: return "NonRepresentable";
    case ErrorKind::UnsynchronizedStart: return "UnsynchronizedStart";
    case ErrorKind::NonMonotonic: return "NonMonotonic";
    case ErrorKind::UnknownSet: return "UnknownSet";
    case ErrorKind::DuplicateNodes: return "DuplicateNodes";
    case ErrorKind::NonMonotonicTimes: return "NonMonotonicTimes";
    case ErrorKind::InsufficientHistory: return "InsufficientHistory";
    case ErrorKind::UndefinedStep: return "UndefinedStep";
    case ErrorKind::WrongSetCount: return "WrongSetCount";
    case ErrorKind::WrongKind: return "WrongKind";
    case ErrorKind::MissingCouplingRecord: return "MissingCouplingRecord";
    case ErrorKind::MissingTrace: return "MissingTrace";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(const ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lts
