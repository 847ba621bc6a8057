#pragma once

#include <cstdint>

#include "coopetition/analysis.hpp"
#include "coopetition/rng.hpp"

namespace coopetition {

struct Claim {
    std::string id;
    std::string relation;  // what is being compared
    std::string observed;  // rendered exact values
    bool pass = false;
};

struct ScenarioResult {
    std::vector<std::pair<std::string, GameSpec>> games;
    std::vector<std::pair<std::string, MediatorSpec>> mediators;
    std::vector<std::pair<std::string, VerificationReport>> reports;
    std::vector<Claim> claims;
    bool all_pass = false;
};

/// The 2x2 opening example: types 00,01,10,11 with prior (alpha, beta, gamma,
/// delta), each player observing one bit. Requires the dominant-strategy
/// regime alpha > 2*beta >= 2*gamma > 4*delta (throws RegimeViolated).
ScenarioResult intro_example(const Rat& alpha, const Rat& beta, const Rat& gamma,
                             const Rat& delta, bool amazon);

/// IR tightness family: ceil(1/eps)+1 segments, top weight = second/eps, all
/// top goods distinct, one shared second good, player 1 fully informed,
/// v = (phi_top/2, 0). Requires eps in (0, 1/3].
ScenarioResult example_ir(const Rat& eps);

/// IC tightness family: two segments with all-distinct goods and top weight
/// = (3/2+eps) * second weight; best incentive-compatible welfare found by
/// exhausting deterministic recommendation tables. Requires eps > 0.
ScenarioResult example_ic(const Rat& eps);

enum class SharingSetting {
    MoreSharingWithCompetitor,     // full sharing optimal only with the outside player
    MoreSharingWithoutCompetitor,  // full sharing optimal only without it
};

/// Builds the designated construction plus its symmetric duplicated variant
/// and checks the welfare orderings between no sharing and full sharing in
/// both environments.
ScenarioResult sharing_comparison(SharingSetting which);

/// n-player jointly-complete game with the outside competitor: the
/// full-revelation mediator certifies exactly when every v_i <= 1/(n+1).
ScenarioResult nplayer_claim(int n, const std::vector<Rat>& v);

enum class InstanceProfile {
    JciNoAmazon,
    JciAmazon,
    NoJciBalanced,
    NoJciTopHeavy,
    NoJciMixed,
    NPlayerJci,         // no outside competitor; a pure equilibrium exists
    TransferJciAmazon,  // jointly complete, competitor present, max(v) > 1/3
};

struct RandomInstance {
    GameSpec game;  // base_values carry the drawn v
    std::vector<Rat> v;
};

/// Deterministic pseudo-random game in the requested regime with base values
/// drawn inside the matching feasibility region. Same seed, same instance,
/// byte for byte.
RandomInstance random_instance(std::uint64_t seed, InstanceProfile profile, int nplayers = 2);

InstanceProfile parse_instance_profile(const std::string& name);
std::string instance_profile_name(InstanceProfile profile);

}  // namespace coopetition
