#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coopetition/analysis.hpp"
#include "coopetition/scenarios.hpp"
#include "lp_oracle.hpp"
#include "test_support.hpp"

using namespace coopetition;
using namespace coopetition::testing;

namespace {

const Rat kA = rat(11, 20), kB = rat(5, 20), kC = rat(3, 20), kD = rat(1, 20);

}  // namespace

TEST_CASE("welfare program: interior base values pool everything") {
    const LpSolution sol = lp_opt({rat(3, 10), rat(3, 10)});
    CHECK(sol.value == rat(2, 3));
    CHECK(sol.beta == 1);
    CHECK(sol.beta_i == 0);
    CHECK(sol.beta_j == 0);
}

TEST_CASE("welfare program: a large base value forces partial revelation") {
    const LpSolution sol = lp_opt({rat(2, 5), rat(1, 10)});
    CHECK(sol.i == 0);
    CHECK(sol.value == rat(3, 5));
    CHECK(sol.beta == rat(3, 5));
    CHECK(sol.beta_i == rat(2, 5));
    CHECK(sol.beta_j == 0);
}

TEST_CASE("welfare program: both branches agree at the breakpoint") {
    const LpSolution sol = lp_opt({rat(1, 3), rat(1, 3)});
    CHECK(sol.value == rat(2, 3));
    CHECK(sol.beta == 1);
    CHECK(sol.beta_i == 0);
}

TEST_CASE("welfare program: infeasible base values are detected") {
    CHECK(error_code([] { lp_opt({rat(2, 5), rat(1, 4)}); }) == Err::LpInfeasible);
    CHECK(error_code([] { lp_opt({rat(1, 2), rat(1, 10)}); }) == Err::LpInfeasible);
}

TEST_CASE("closed form matches the vertex-enumeration oracle") {
    for (long n1 = 0; n1 <= 16; ++n1) {
        for (long n2 = 0; n2 <= 16; ++n2) {
            const Rat v1 = rat(n1, 32), v2 = rat(n2, 32);
            const auto oracle = lp_vertex_oracle(v1, v2);
            const Rat vi = rmax(v1, v2), vj = rmin(v1, v2);
            if (2 * vi + vj > 1) {
                CHECK_FALSE(oracle.has_value());
                CHECK_THROWS_AS((void)lp_opt({v1, v2}), EngineError);
            } else {
                REQUIRE(oracle.has_value());
                const LpSolution sol = lp_opt({v1, v2});
                CHECK(sol.value == *oracle);
                CHECK(sol.beta_i + sol.beta_j + sol.beta == 1);
                CHECK(sol.beta_j == 0);
                CHECK(sol.value == (sol.beta_i + sol.beta_j) / 2 + 2 * sol.beta / 3);
            }
        }
    }
}

TEST_CASE("necessary conditions without the competitor") {
    const ValidatedGame game = validate_game(intro_spec(kA, kB, kC, kD, false));
    const FeasibilityVerdict verdict = feasibility(game, {rat(3, 5), rat(1, 2)});
    CHECK_FALSE(verdict.necessary_pass);
    REQUIRE(!verdict.violated.empty());
    CHECK(verdict.violated.front().find("v_1 + v_2") != std::string::npos);
}

TEST_CASE("necessary conditions with the competitor") {
    const ValidatedGame game = validate_game(intro_spec(kA, kB, kC, kD, true));
    const FeasibilityVerdict bad = feasibility(game, {rat(2, 5), rat(1, 4)});
    CHECK_FALSE(bad.necessary_pass);
    const FeasibilityVerdict good =
        feasibility(game, {rat(31, 120), rat(37, 120)});
    CHECK(good.necessary_pass);
}

TEST_CASE("equilibrium base values always pass the necessary conditions") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        for (const auto profile : {InstanceProfile::JciNoAmazon, InstanceProfile::JciAmazon}) {
            const RandomInstance inst = random_instance(seed, profile);
            const ValidatedGame game = validate_game(inst.game);
            for (const PureBne& eq : enumerate_pure_bne(game)) {
                CHECK(feasibility(game, eq.utilities).necessary_pass);
            }
        }
    }
}

TEST_CASE("welfare bound: jointly complete games") {
    const ValidatedGame with = validate_game(intro_spec(kA, kB, kC, kD, true));
    CHECK(opt_benchmark(with) == rat(2, 3));
    const ValidatedGame without = validate_game(intro_spec(kA, kB, kC, kD, false));
    CHECK(opt_benchmark(without) == 1);
}

TEST_CASE("welfare bound: shared-second-good family pools") {
    const ScenarioResult scenario = example_ir(rat(1, 4));
    const ValidatedGame game = validate_game(scenario.games.front().second);
    CHECK(opt_benchmark(game) == rat(8, 15));  // (2/3) * 4/5
}

TEST_CASE("welfare bound is invariant under relabeling") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const RandomInstance inst = random_instance(seed, InstanceProfile::NoJciMixed);
        const Rat reference = opt_benchmark(validate_game(inst.game));
        GameSpec swapped = inst.game;
        std::swap(swapped.partitions[0], swapped.partitions[1]);
        std::swap(swapped.base_values[0], swapped.base_values[1]);
        CHECK(opt_benchmark(validate_game(swapped)) == reference);
        Rng rng(seed * 17 + 3);
        const auto [relabeled, good_perm] = permuted_spec(inst.game, rng);
        CHECK(opt_benchmark(validate_game(relabeled)) == reference);
    }
}

TEST_CASE("echoing an equilibrium certifies with zero slack") {
    const ValidatedGame game = validate_game(intro_spec(kA, kB, kC, kD, true));
    const MediatorSpec echo = echo_mediator(game, intro_dominant());
    const VerificationReport report =
        verify_mediator(game, echo, {rat(31, 120), rat(37, 120)});
    CHECK(report.certified);
    CHECK(report.ic.is_equilibrium);
    CHECK(report.ir_slacks == std::vector<Rat>{Rat(0), Rat(0)});
}

TEST_CASE("reported ratio never exceeds one") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const RandomInstance inst = random_instance(seed, InstanceProfile::NoJciMixed);
        const ValidatedGame game = validate_game(inst.game);
        const VerificationReport report =
            verify_mediator(game, mediator_classwise(game, inst.v), inst.v);
        CHECK(report.ratio <= 1);
    }
}

TEST_CASE("certified welfare respects the program optimum") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const RandomInstance inst = random_instance(seed, InstanceProfile::JciAmazon);
        const ValidatedGame game = validate_game(inst.game);
        const VerificationReport report =
            verify_mediator(game, mediator_amazon(game, inst.v), inst.v);
        CHECK(report.certified);
        CHECK(report.welfare <= lp_opt(inst.v).value);
    }
}

TEST_CASE("hypothetical full information never helps the responder") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const RandomInstance inst = random_instance(seed, InstanceProfile::JciAmazon);
        const ValidatedGame game = validate_game(inst.game);
        const HypotheticalChecks checks = hypothetical_deviation_checks(game, mediator_amazon(game, inst.v));
        CHECK(checks.responder_not_better);
        CHECK(checks.welfare_not_lower);
    }
}

TEST_CASE("under full sharing the responder comparison is an equality") {
    const ValidatedGame game = validate_game(intro_spec(kA, kB, kC, kD, true));
    const HypotheticalChecks checks = hypothetical_deviation_checks(game, full_revelation_mediator(game));
    CHECK(checks.responder_deviation_value == checks.responder_obedient_value);
    CHECK(checks.responder_not_better);
    CHECK(checks.welfare_not_lower);
}

TEST_CASE("equilibrium echo leaves slack in the hypothetical comparison") {
    const ValidatedGame game = validate_game(intro_spec(kA, kB, kC, kD, true));
    const HypotheticalChecks checks = hypothetical_deviation_checks(game, echo_mediator(game, intro_dominant()));
    CHECK(checks.responder_not_better);
    CHECK(checks.welfare_not_lower);
    CHECK(checks.hypothetical_welfare > checks.obedient_welfare);
}

TEST_CASE("mediation strictly helps the default opening game without the competitor") {
    const ValidatedGame game = validate_game(intro_spec(kA, kB, kC, kD, false));
    const StrictBenefit sb = strict_benefit(game);
    CHECK(sb.beneficial);
    CHECK(sb.benchmark == rat(19, 20));
    CHECK(sb.witness_utilities ==
          std::vector<Rat>{rat(17, 40) + kD / 2, rat(21, 40) + kD / 2});
}

TEST_CASE("a fully served market leaves nothing for mediation") {
    // one player always offers the correct good in equilibrium when the last
    // cell weight vanishes
    const ValidatedGame game =
        validate_game(intro_spec(rat(3, 5), rat(1, 5), rat(1, 5), Rat(0), false));
    const StrictBenefit sb = strict_benefit(game);
    CHECK_FALSE(sb.beneficial);
    CHECK(sb.benchmark == 1);
}

TEST_CASE("the same game gains from mediation once the competitor arrives") {
    const ValidatedGame game =
        validate_game(intro_spec(rat(3, 5), rat(1, 5), rat(1, 5), Rat(0), true));
    const StrictBenefit sb = strict_benefit(game);
    CHECK(sb.beneficial);
    CHECK(sb.benchmark == rat(3, 5));
    Rat welfare(0);
    for (const Rat& u : sb.witness_utilities) welfare += u;
    CHECK(welfare == rat(2, 3));
}
