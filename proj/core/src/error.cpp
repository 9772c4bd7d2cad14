#include "katz/error.hpp"

namespace katz {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::IncompatibleConductor: return "IncompatibleConductor";
        case ErrorCode::ConductorTooSmall: return "ConductorTooSmall";
        case ErrorCode::OutsideCoefficientField: return "OutsideCoefficientField";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
        case ErrorCode::NoDominantTerm: return "NoDominantTerm";
        case ErrorCode::NonIntegralIrregularity: return "NonIntegralIrregularity";
        case ErrorCode::RigTooLarge: return "RigTooLarge";
        case ErrorCode::RamifiedChoice: return "RamifiedChoice";
        case ErrorCode::TrivialBlock: return "TrivialBlock";
        case ErrorCode::SlopeNotGreaterThanOne: return "SlopeNotGreaterThanOne";
        case ErrorCode::IntegerLambda: return "IntegerLambda";
        case ErrorCode::ExcludedTrivialCase: return "ExcludedTrivialCase";
        case ErrorCode::IrrationalPoint: return "IrrationalPoint";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
        case ErrorCode::NotRigidInput: return "NotRigidInput";
        case ErrorCode::ReplayMismatch: return "ReplayMismatch";
        case ErrorCode::InvalidDatum: return "InvalidDatum";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownName: return "UnknownName";
        case ErrorCode::OracleMismatch: return "OracleMismatch";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace katz
