#pragma once

#include "coopetition/strategy.hpp"

namespace coopetition {

// Optimum of the three-variable welfare program over (beta_i, beta_j, beta):
// the probabilities that exactly the larger-v player, exactly the other, or
// both are recommended the correct good.
struct LpSolution {
    PlayerId i = 0;  // the larger-v player (ties go to player 0)
    Rat beta_i, beta_j, beta;
    Rat value;
};

/// Closed form; throws LpInfeasible when 2*max(v) + min(v) > 1.
LpSolution lp_opt(const std::vector<Rat>& v);

struct FeasibilityVerdict {
    // The environment-appropriate conditions are necessary for an IR, IC
    // mediator to exist; sufficiency is witnessed by constructing one.
    bool necessary_pass = false;
    std::vector<std::string> violated;
};

/// Two players, jointly complete information.
FeasibilityVerdict feasibility(const ValidatedGame& game, const std::vector<Rat>& v);

/// Maximal total welfare of the regular players over all mediators, ignoring
/// IR and IC: brute force over deterministic per-segment action tuples (the
/// optimum is attained at one because welfare is linear in the mediator).
Rat opt_benchmark(const ValidatedGame& game);

struct VerificationReport {
    BneVerdict ic;                // obedience check of the induced game
    std::vector<Rat> utilities;   // post-transfer expected utilities
    std::vector<Rat> ir_slacks;   // utilities minus v, per player
    Rat welfare;                  // sum of regular players' utilities
    Rat opt;
    Rat ratio;                    // welfare / opt
    std::vector<PlayerId> fully_revealing_to;
    bool certified = false;       // ic holds and every slack is >= 0
};

VerificationReport verify_mediator(const ValidatedGame& game, const MediatorSpec& mediator,
                                   const std::vector<Rat>& v);

// Exact evaluation of the two hypothetical-deviation inequalities used by the
// upper-bound arguments: give the larger-v player full information, let the
// other best-respond to her cell and message.
struct HypotheticalChecks {
    Rat responder_deviation_value;  // j's value in the hypothetical
    Rat responder_obedient_value;   // j's value under obedience
    Rat hypothetical_welfare;
    Rat obedient_welfare;
    bool responder_not_better = false;  // deviation value <= obedient value
    bool welfare_not_lower = false;     // hypothetical welfare >= obedient welfare
};

/// Two players, jointly complete information, outside competitor present.
HypotheticalChecks hypothetical_deviation_checks(const ValidatedGame& game, const MediatorSpec& mediator);

struct StrictBenefit {
    bool beneficial = false;
    Rat benchmark;  // welfare of the reference no-mediation equilibrium
    MediatorSpec witness;
    std::vector<Rat> witness_utilities;
};

/// Whether a constructed IR, IC mediator strictly beats the unmediated game.
/// Without the outside competitor the benchmark is the welfare-maximal pure
/// equilibrium; with it, every enumerated pure equilibrium must be beaten.
/// Throws NoPureBne when the unmediated game has no pure equilibrium.
StrictBenefit strict_benefit(const ValidatedGame& game, const EnumerateOptions& options = {});

}  // namespace coopetition
