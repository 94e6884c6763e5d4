#include "mvalex/error.hpp"

namespace mvalex {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::NonPlanar: return "NonPlanar";
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::OrientationError: return "OrientationError";
    case ErrorKind::WidthError: return "WidthError";
    case ErrorKind::ColorError: return "ColorError";
    case ErrorKind::BadSite: return "BadSite";
    case ErrorKind::UnknownColor: return "UnknownColor";
    case ErrorKind::NotOneStrand: return "NotOneStrand";
    case ErrorKind::ColoringMismatch: return "ColoringMismatch";
    case ErrorKind::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace mvalex
