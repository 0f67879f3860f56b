#pragma once

#include <exception>

#include "xxcrit/errors.hpp"

namespace xxcrit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumeric = 4;

/// Validation and resource errors -> 2, IO -> 3, numeric and anything else -> 4.
inline int exit_code(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const ResourceError*>(&e)) return kExitValidation;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  return kExitNumeric;
}

}  // namespace xxcrit::cli
