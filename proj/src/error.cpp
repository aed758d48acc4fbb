#include "skewgroup/error.hpp"

namespace skewgroup {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::ReducibleMinpoly: return "ReducibleMinpoly";
    case ErrorCode::InvalidFieldSpec: return "InvalidFieldSpec";
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::IndexCollision: return "IndexCollision";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IncompleteClosure: return "IncompleteClosure";
    case ErrorCode::SeedNotOnConfiguration: return "SeedNotOnConfiguration";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace skewgroup
