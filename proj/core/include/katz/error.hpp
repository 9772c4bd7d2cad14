#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace katz {

enum class ErrorCode {
    DivisionByZero,
    IncompatibleConductor,
    ConductorTooSmall,
    OutsideCoefficientField,
    InvalidArgument,
    NotInvertible,
    InsufficientPrecision,
    NoDominantTerm,
    NonIntegralIrregularity,
    RigTooLarge,
    RamifiedChoice,
    TrivialBlock,
    SlopeNotGreaterThanOne,
    IntegerLambda,
    ExcludedTrivialCase,
    IrrationalPoint,
    InternalInconsistency,
    NotRigidInput,
    ReplayMismatch,
    InvalidDatum,
    ParseError,
    UnknownName,
    OracleMismatch,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace katz
