#pragma once

#include "coopetition/scenarios.hpp"

namespace coopetition {

struct SweepConfig {
    InstanceProfile profile = InstanceProfile::JciAmazon;
    std::uint64_t seed_start = 1;
    int count = 100;
    bool parallel = true;
    int nplayers = 3;  // only for the n-player profile
};

struct SweepOutcome {
    std::uint64_t seed = 0;
    bool pass = false;
    std::string detail;  // empty on pass
};

struct SweepSummary {
    std::vector<SweepOutcome> outcomes;  // in seed order
    int passed = 0;
    int failed = 0;
};

/// Generates one instance and certifies every claim the profile's mediator
/// construction makes on it (construction succeeds, obedience is an
/// equilibrium, IR slacks are nonnegative, welfare/ratio identities hold).
SweepOutcome check_instance(std::uint64_t seed, InstanceProfile profile, int nplayers = 2);

/// Runs check_instance over a seed range. Instances are independent, so the
/// parallel path is a plain OpenMP loop writing disjoint slots; outcomes are
/// identical to the serial reference and ordered by seed either way.
SweepSummary run_sweep(const SweepConfig& config);

}  // namespace coopetition
