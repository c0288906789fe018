// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qshadow {

enum class ErrorKind {
  NonHermitian,
  NoConvergence,
  LengthMismatch,
  DimMismatch,
  SizeLimit,
  NotEnumerable,
  SupportLeak,
  NonPositiveObservable,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// that callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::NotEnumerable: return "NotEnumerable";
    case ErrorKind::SupportLeak: return "SupportLeak";
    case ErrorKind::NonPositiveObservable: return "NonPositiveObservable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace qshadow
