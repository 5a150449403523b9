#include "rootmirror/error.hpp"

namespace rootmirror {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::Grading: return "grading";
    case ErrorKind::RingMismatch: return "ring-mismatch";
    case ErrorKind::LabelKind: return "label-kind";
    case ErrorKind::Identification: return "identification";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::NilpotentDivision: return "nilpotent-division";
    case ErrorKind::IncompatibleSectors: return "incompatible-sectors";
    case ErrorKind::NotInvertible: return "not-invertible";
    case ErrorKind::ConeSliceOutOfContract: return "cone-slice-out-of-contract";
    case ErrorKind::UnsupportedDirection: return "unsupported-direction";
    case ErrorKind::Window: return "window";
    case ErrorKind::Bounds: return "bounds";
    case ErrorKind::Config: return "config";
    case ErrorKind::Nef: return "nef";
    case ErrorKind::Range: return "range";
    case ErrorKind::MissingData: return "missing-data";
    case ErrorKind::Mode: return "mode";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + " error: " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace rootmirror
