#pragma once

#include <stdexcept>
#include <string>

namespace coopetition {

enum class Err {
    PriorNotNormalized,
    PartitionNotCovering,
    UnknownGood,
    BaseValueOutOfRange,
    ProfileIncomplete,
    VariantMismatch,
    BudgetExceeded,
    NoPureBne,
    InfeasibleBaseValues,
    PreconditionViolated,
    DegenerateAlpha,
    NotABne,
    MissingCell,
    LpInfeasible,
    RegimeViolated,
    ParseError,
};

const char* err_name(Err code);

class EngineError : public std::runtime_error {
public:
    EngineError(Err code, const std::string& detail)
        : std::runtime_error(std::string(err_name(code)) + ": " + detail), code_(code) {}

    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& detail) {
    throw EngineError(code, detail);
}

inline void require(bool ok, Err code, const std::string& detail) {
    if (!ok) fail(code, detail);
}

}  // namespace coopetition
