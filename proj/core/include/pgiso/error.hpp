#pragma once

#include <stdexcept>
#include <string>

namespace pgiso {

enum class ErrorCode {
    ShapeMismatch,
    Singular,
    CapExceeded,
    BudgetExceeded,
    NotSkew,
    Infeasible,
    InvalidTuple,
    ConstructionFailed,
    InvalidForm,
    Ambiguous,
    NormalizationFailed,
    ParseError,
    NotAGroup,
    NotPPower,
    WrongExponent,
    NotClass2,
    Degenerate,
    BoundsTooSmall,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace pgiso
