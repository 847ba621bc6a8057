#include "coopetition/errors.hpp"

namespace coopetition {

const char* err_name(Err code) {
    switch (code) {
        case Err::PriorNotNormalized: return "PriorNotNormalized";
        case Err::PartitionNotCovering: return "PartitionNotCovering";
        case Err::UnknownGood: return "UnknownGood";
        case Err::BaseValueOutOfRange: return "BaseValueOutOfRange";
        case Err::ProfileIncomplete: return "ProfileIncomplete";
        case Err::VariantMismatch: return "VariantMismatch";
        case Err::BudgetExceeded: return "BudgetExceeded";
        case Err::NoPureBne: return "NoPureBne";
        case Err::InfeasibleBaseValues: return "InfeasibleBaseValues";
        case Err::PreconditionViolated: return "PreconditionViolated";
        case Err::DegenerateAlpha: return "DegenerateAlpha";
        case Err::NotABne: return "NotABne";
        case Err::MissingCell: return "MissingCell";
        case Err::LpInfeasible: return "LpInfeasible";
        case Err::RegimeViolated: return "RegimeViolated";
        case Err::ParseError: return "ParseError";
    }
    return "UnknownError";
}

}  // namespace coopetition
