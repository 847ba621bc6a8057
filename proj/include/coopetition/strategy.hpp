#pragma once

#include <cstdint>
#include <optional>

#include "coopetition/game.hpp"
#include "coopetition/mediators.hpp"

namespace coopetition {

struct BneVerdict {
    bool is_equilibrium = false;
    std::optional<PlayerId> worst_deviator;
    // Largest interim improvement over all players and reachable information
    // sets; never negative, and exactly 0 at an equilibrium.
    Rat max_gain;
};

/// Exact equilibrium check of `profile` in the (possibly mediated) game.
/// Deviation gains are interim, per information set.
BneVerdict check_bne(const ValidatedGame& game, const StrategyProfile& profile,
                     const MediatorSpec* mediator = nullptr);

struct BestResponse {
    Strategy strategy;
    Rat value;  // ex-ante utility of the responding player
};

/// Pointwise argmax of conditional expected utility against the fixed
/// opponents. Unreachable information sets get the good with the largest
/// unconditional prior weight; ties go to the lowest good index.
BestResponse best_response(const ValidatedGame& game, const StrategyProfile& profile,
                           PlayerId player, const MediatorSpec* mediator = nullptr);

enum class NaiveVariant {
    Jci,        // most-likely-correct good per cell; alpha_responder is a probability
    NoJci,      // best response to the informed player playing each segment's top good
    NoJciTopHeavy,  // as NoJci, conditional on the top-heavy segment class
};

// The benchmark response of the less-informed player j against a fully
// revealing opponent i, with the two value aggregates the constructions need.
struct NaiveBestResponse {
    Strategy strategy;  // fragment for the responder, unmediated info sets
    PlayerId informed = 0;
    PlayerId responder = 0;
    Rat alpha_responder;  // Jci: probability the response is correct;
                          // NoJci*: responder's expected utility
    Rat alpha_informed;   // informed player's expected utility in the hypothetical
    NaiveVariant variant = NaiveVariant::Jci;
};

NaiveBestResponse naive_best_response(const ValidatedGame& game, PlayerId informed,
                                      NaiveVariant variant);

struct PureBne {
    StrategyProfile profile;
    std::vector<Rat> utilities;
};

std::uint64_t default_bne_budget();  // COOPETITION_BNE_BUDGET, else 2'000'000

struct EnumerateOptions {
    std::uint64_t budget = default_bne_budget();
    bool parallel = true;
};

/// All pure-strategy equilibria of the unmediated game, sorted by total
/// welfare descending (ties by profile encoding). Throws BudgetExceeded when
/// the profile space is larger than the budget. The parallel path partitions
/// the scan across OpenMP tasks and merges deterministically; results are
/// identical to the serial reference.
std::vector<PureBne> enumerate_pure_bne(const ValidatedGame& game,
                                        const EnumerateOptions& options = {});

}  // namespace coopetition
