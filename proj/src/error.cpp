#include "qcond/error.hpp"

namespace qcond {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NotCommutingFamily: return "NotCommutingFamily";
    case ErrorKind::ZeroProbabilityCondition: return "ZeroProbabilityCondition";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::MissingAlpha: return "MissingAlpha";
    case ErrorKind::NotJointlyCommuting: return "NotJointlyCommuting";
    case ErrorKind::RetryExhausted: return "RetryExhausted";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ReferenceError: return "ReferenceError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace qcond
