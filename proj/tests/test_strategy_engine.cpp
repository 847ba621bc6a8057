#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coopetition/scenarios.hpp"
#include "coopetition/strategy.hpp"
#include "test_support.hpp"

using namespace coopetition;
using namespace coopetition::testing;

namespace {

const Rat kA = rat(11, 20), kB = rat(5, 20), kC = rat(3, 20), kD = rat(1, 20);

}  // namespace

TEST_CASE("best response to the dominant column strategy is the dominant row strategy") {
    const ValidatedGame game = validate_game(intro_spec(kA, kB, kC, kD, false));
    StrategyProfile profile = intro_dominant();
    profile.players[0] = cells_strategy({1, 0});  // deliberately swapped
    const BestResponse response = best_response(game, profile, 0);
    CHECK(response.strategy.at({0, kNoMessage}) == pure(0));
    CHECK(response.strategy.at({1, kNoMessage}) == pure(1));
    CHECK(response.value == rat(17, 40));
}

TEST_CASE("single-good games have a forced best response") {
    GameSpec spec;
    spec.types = {"a", "b"};
    spec.goods = {"g"};
    spec.desired = {0, 0};
    spec.prior = {rat(1, 2), rat(1, 2)};
    spec.partitions = {{{0, 1}}, {{0}, {1}}};
    spec.base_values = {Rat(0), Rat(0)};
    const ValidatedGame game = validate_game(spec);
    const StrategyProfile both = two_player_profile({0}, {0, 0});
    const BestResponse response = best_response(game, both, 0);
    CHECK(response.strategy.at({0, kNoMessage}) == pure(0));
    CHECK(response.value == rat(1, 2));
}

TEST_CASE("uninformed player best-responds with the safe good") {
    // segment 2 has conditional weights (1/5, 4/5) on (g1, g2); player 1
    // separates, so g1 covers both segments for player 2
    GameSpec spec;
    spec.types = {"x", "y1", "y2"};
    spec.goods = {"g1", "g2"};
    spec.desired = {0, 0, 1};
    spec.prior = {rat(1, 2), rat(1, 10), rat(2, 5)};
    spec.partitions = {{{0}, {1, 2}}, {{0, 1, 2}}};
    spec.base_values = {Rat(0), Rat(0)};
    const ValidatedGame game = validate_game(spec);
    const StrategyProfile play = two_player_profile({0, 1}, {0});
    const BestResponse response = best_response(game, play, 1);
    CHECK(response.strategy.at({0, kNoMessage}) == pure(0));
    CHECK(response.value == rat(7, 20));
}

TEST_CASE("dominant strategies form an equilibrium with zero gain") {
    for (bool amazon : {false, true}) {
        const ValidatedGame game = validate_game(intro_spec(kA, kB, kC, kD, amazon));
        const BneVerdict verdict = check_bne(game, intro_dominant());
        CHECK(verdict.is_equilibrium);
        CHECK(verdict.max_gain == 0);
        CHECK_FALSE(verdict.worst_deviator.has_value());
    }
}

TEST_CASE("a swapped row strategy admits an exact deviation gain") {
    const ValidatedGame game = validate_game(intro_spec(kA, kB, kC, kD, false));
    StrategyProfile profile = intro_dominant();
    profile.players[0] = cells_strategy({1, 0});
    const BneVerdict verdict = check_bne(game, profile);
    CHECK_FALSE(verdict.is_equilibrium);
    // worst information set: the 1-bit cell, where switching back to the
    // matching good gains (gamma - delta)/(gamma + delta)
    CHECK(verdict.max_gain == rat(1, 2));
    CHECK(verdict.worst_deviator == 0);
}

TEST_CASE("one-type games are trivially in equilibrium") {
    GameSpec spec;
    spec.types = {"only"};
    spec.goods = {"g"};
    spec.desired = {0};
    spec.prior = {Rat(1)};
    spec.partitions = {{{0}}, {{0}}};
    spec.base_values = {Rat(0), Rat(0)};
    const ValidatedGame game = validate_game(spec);
    CHECK(check_bne(game, two_player_profile({0}, {0})).is_equilibrium);
}

TEST_CASE("naive response of the column player picks the likelier good per cell") {
    const ValidatedGame game = validate_game(intro_spec(kA, kB, kC, kD, false));
    const NaiveBestResponse naive = naive_best_response(game, 0, NaiveVariant::Jci);
    CHECK(naive.responder == 1);
    CHECK(naive.strategy.at({0, kNoMessage}) == pure(0));  // alpha beats gamma
    CHECK(naive.strategy.at({1, kNoMessage}) == pure(1));  // beta beats delta
    CHECK(naive.alpha_responder == kA + kB);
    // informed value: 1 - alpha_responder/2 without the competitor
    CHECK(naive.alpha_informed == 1 - (kA + kB) / 2);
}

TEST_CASE("a fully informed responder is always correct") {
    GameSpec spec = intro_spec(kA, kB, kC, kD, false);
    spec.partitions[1] = {{0}, {1}, {2}, {3}};
    const ValidatedGame game = validate_game(spec);
    const NaiveBestResponse naive = naive_best_response(game, 0, NaiveVariant::Jci);
    CHECK(naive.alpha_responder == 1);
    CHECK(naive.alpha_informed == rat(1, 2));  // split every type
}

TEST_CASE("informed-value identities hold on random jointly complete games") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        for (const auto profile : {InstanceProfile::JciNoAmazon, InstanceProfile::JciAmazon}) {
            const RandomInstance inst = random_instance(seed, profile);
            const ValidatedGame game = validate_game(inst.game);
            for (PlayerId informed = 0; informed < 2; ++informed) {
                const NaiveBestResponse naive =
                    naive_best_response(game, informed, NaiveVariant::Jci);
                const Rat& a = naive.alpha_responder;
                if (game.amazon()) {
                    CHECK(naive.alpha_informed == a / 3 + (1 - a) / 2);
                } else {
                    CHECK(naive.alpha_informed == a / 2 + (1 - a));
                }
            }
        }
    }
}

TEST_CASE("the shared-second-good family sends the uninformed player to the common good") {
    const ScenarioResult scenario = example_ir(rat(1, 4));
    const ValidatedGame game = validate_game(scenario.games.front().second);
    const NaiveBestResponse naive = naive_best_response(game, 0, NaiveVariant::NoJciTopHeavy);
    const GoodId common = game.num_goods() - 1;
    CHECK(naive.strategy.at({0, kNoMessage}) == pure(common));
    // correct with the common good's conditional weight 1/5, halved by the
    // competitor's matching offer
    CHECK(naive.alpha_responder == rat(1, 10));
    CHECK(naive.alpha_informed == rat(2, 5));  // top weight 4/5, split with the competitor
}

TEST_CASE("both naive formulations coincide under jointly complete information") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        for (const auto profile : {InstanceProfile::JciNoAmazon, InstanceProfile::JciAmazon}) {
            const RandomInstance inst = random_instance(seed, profile);
            const ValidatedGame game = validate_game(inst.game);
            for (PlayerId informed = 0; informed < 2; ++informed) {
                const NaiveBestResponse jci =
                    naive_best_response(game, informed, NaiveVariant::Jci);
                const NaiveBestResponse nojci =
                    naive_best_response(game, informed, NaiveVariant::NoJci);
                CHECK(jci.strategy.play == nojci.strategy.play);
                CHECK(jci.alpha_informed == nojci.alpha_informed);
            }
        }
    }
}

TEST_CASE("variant preconditions are enforced") {
    GameSpec spec;
    spec.types = {"x", "y1", "y2"};
    spec.goods = {"g1", "g2"};
    spec.desired = {0, 0, 1};
    spec.prior = {rat(1, 2), rat(1, 10), rat(2, 5)};
    spec.partitions = {{{0}, {1, 2}}, {{0, 1, 2}}};
    spec.base_values = {Rat(0), Rat(0)};
    const ValidatedGame game = validate_game(spec);
    CHECK(error_code([&] { naive_best_response(game, 0, NaiveVariant::Jci); }) ==
          Err::VariantMismatch);

    // all segments balanced: the top-heavy-conditional variant is undefined
    const ValidatedGame balanced =
        validate_game(segmented_game({Rat(1)}, {rat(1, 2)}));
    CHECK(error_code([&] { naive_best_response(balanced, 0, NaiveVariant::NoJciTopHeavy); }) ==
          Err::VariantMismatch);
}

TEST_CASE("pure equilibrium enumeration finds the dominant profile first") {
    const ValidatedGame game = validate_game(intro_spec(kA, kB, kC, kD, false));
    const auto equilibria = enumerate_pure_bne(game);
    REQUIRE(!equilibria.empty());
    CHECK(equilibria.front().utilities == std::vector<Rat>{rat(17, 40), rat(21, 40)});
    // the dominant strategies are strict, so the equilibrium is unique
    CHECK(equilibria.size() == 1);
}

TEST_CASE("three-segment game locks the coarse cell onto the safe good") {
    // mixed segment with conditional weights (1/2, 3/10, 1/5): the player who
    // cannot tell it from the singleton plays that singleton's good there
    GameSpec spec;
    spec.types = {"s1", "s2", "m1", "m2", "m3"};
    spec.goods = {"g1", "g2", "g3"};
    spec.desired = {0, 2, 0, 1, 2};
    spec.prior = {rat(1, 3), rat(1, 3), rat(1, 6), rat(1, 10), rat(1, 15)};
    spec.partitions = {{{0}, {1, 2, 3, 4}}, {{1}, {0, 2, 3, 4}}};
    spec.base_values = {Rat(0), Rat(0)};
    const ValidatedGame game = validate_game(spec);
    const auto equilibria = enumerate_pure_bne(game);
    REQUIRE(!equilibria.empty());
    const GoodDist& coarse = equilibria.front().profile.players[0].at({1, kNoMessage});
    CHECK(coarse == pure(2));  // good g3 on the cell mixing s2 with the wide segment
}

TEST_CASE("enumeration respects its budget") {
    const ValidatedGame game = validate_game(intro_spec(kA, kB, kC, kD, false));
    EnumerateOptions options;
    options.budget = 8;  // 16 profiles needed
    CHECK(error_code([&] { enumerate_pure_bne(game, options); }) == Err::BudgetExceeded);
}

TEST_CASE("single-action games have exactly one equilibrium") {
    GameSpec spec;
    spec.types = {"only"};
    spec.goods = {"g"};
    spec.desired = {0};
    spec.prior = {Rat(1)};
    spec.partitions = {{{0}}, {{0}}};
    spec.base_values = {Rat(0), Rat(0)};
    const auto equilibria = enumerate_pure_bne(validate_game(spec));
    CHECK(equilibria.size() == 1);
}

TEST_CASE("best response cannot improve on an enumerated equilibrium") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const RandomInstance inst = random_instance(seed, InstanceProfile::JciAmazon);
        const ValidatedGame game = validate_game(inst.game);
        const auto equilibria = enumerate_pure_bne(game);
        for (const PureBne& eq : equilibria) {
            CHECK(check_bne(game, eq.profile).max_gain == 0);
            for (PlayerId p = 0; p < 2; ++p) {
                CHECK(best_response(game, eq.profile, p).value == eq.utilities[p]);
            }
        }
    }
}

TEST_CASE("truthful play where the good is pinned down is never improvable") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const RandomInstance inst = random_instance(seed, InstanceProfile::JciNoAmazon);
        const ValidatedGame game = validate_game(inst.game);
        // player 0 plays the correct good wherever her cell determines it
        Rng rng(seed + 5);
        StrategyProfile play = random_pure_profile(game, rng);
        for (int c = 0; c < game.num_cells(0); ++c) {
            const auto& members = game.cell_members(0, c);
            const GoodId g = game.desired(members[0]);
            if (std::all_of(members.begin(), members.end(),
                            [&](TypeId t) { return game.desired(t) == g; })) {
                play.players[0].set(c, kNoMessage, pure(g));
                const BestResponse response = best_response(game, play, 0);
                CHECK(response.strategy.at({c, kNoMessage}) == pure(g));
            }
        }
    }
}
