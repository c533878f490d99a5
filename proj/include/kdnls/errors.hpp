#pragma once

#include <stdexcept>
#include <string>

namespace kdnls {

enum class ErrorCode {
    NonFinite,
    GridTooSmall,
    InvalidGrid,
    ZeroCoupling,
    ZeroEigenvalue,
    ZeroAmplitude,
    DenominatorVanishes,
    SingularOmega,
    ConditionBlowup,
    DegeneratePair,
    DegenerateEigenvalue,
    InvalidDegeneration,
    AllNodesExcluded,
    GridMismatch,
    ResolutionTooCoarse,
    InvalidConfig,
    IOFailure,
    VerificationFailed,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace kdnls
