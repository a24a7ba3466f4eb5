#include "pgiso/error.hpp"

namespace pgiso {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::NotSkew: return "NotSkew";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::InvalidTuple: return "InvalidTuple";
        case ErrorCode::ConstructionFailed: return "ConstructionFailed";
        case ErrorCode::InvalidForm: return "InvalidForm";
        case ErrorCode::Ambiguous: return "Ambiguous";
        case ErrorCode::NormalizationFailed: return "NormalizationFailed";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NotAGroup: return "NotAGroup";
        case ErrorCode::NotPPower: return "NotPPower";
        case ErrorCode::WrongExponent: return "WrongExponent";
        case ErrorCode::NotClass2: return "NotClass2";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::BoundsTooSmall: return "BoundsTooSmall";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace pgiso
