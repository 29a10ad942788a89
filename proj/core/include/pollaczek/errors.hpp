#pragma once

#include <stdexcept>
#include <string>

namespace pollaczek {

enum class ErrorCode {
    NonUnitMean,
    NonPositiveParameter,
    DegenerateLattice,
    TwoPointOrderViolation,
    OutsideAnalyticityStrip,
    UnsupportedOrder,
    LogBranchFailure,
    NewtonDivergence,
    NonNegativeSaddle,
    TruncationFailure,
    PanelLimitExceeded,
    BetaOutOfRange,
    RefinementDegenerate,
    InversionUnstable,
    UnstableLoad,
    ConfigError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace pollaczek
