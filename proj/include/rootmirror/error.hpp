#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rootmirror {

enum class ErrorKind {
  InvalidDimension,
  Grading,
  RingMismatch,
  LabelKind,
  Identification,
  Domain,
  NilpotentDivision,
  IncompatibleSectors,
  NotInvertible,
  ConeSliceOutOfContract,
  UnsupportedDirection,
  Window,
  Bounds,
  Config,
  Nef,
  Range,
  MissingData,
  Mode,
  Parse,
};

std::string_view error_kind_name(ErrorKind kind);

// Every contract violation raised by the library carries a kind so callers
// (the CLI in particular) can report it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace rootmirror
