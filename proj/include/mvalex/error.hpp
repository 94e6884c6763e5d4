#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvalex {

enum class ErrorKind {
  NotDivisible,
  NonPlanar,
  Malformed,
  SizeMismatch,
  SyntaxError,
  OrientationError,
  WidthError,
  ColorError,
  BadSite,
  UnknownColor,
  NotOneStrand,
  ColoringMismatch,
  Degenerate,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (and the CLI) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mvalex
