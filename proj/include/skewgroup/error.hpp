#pragma once

#include <stdexcept>
#include <string>

namespace skewgroup {

enum class ErrorCode {
  NonPrimeModulus,
  ReducibleMinpoly,
  InvalidFieldSpec,
  MixedFields,
  DivisionByZero,
  UnsupportedField,
  SingularMatrix,
  ZeroMatrix,
  IndexCollision,
  InvalidIndex,
  InvalidConfig,
  IncompleteClosure,
  SeedNotOnConfiguration,
  InvalidParameters,
  ParseError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace skewgroup
