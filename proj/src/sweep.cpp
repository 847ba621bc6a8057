#include "coopetition/sweep.hpp"

namespace coopetition {

namespace {

bool ratio_at_least_three_quarters(const VerificationReport& report) {
    return 4 * report.welfare >= 3 * report.opt;
}

}  // namespace

SweepOutcome check_instance(std::uint64_t seed, InstanceProfile profile, int nplayers) {
    SweepOutcome out;
    out.seed = seed;
    std::vector<std::string> failures;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    };

    try {
        const RandomInstance instance = random_instance(seed, profile, nplayers);
        const ValidatedGame game = validate_game(instance.game);
        const std::vector<Rat>& v = instance.v;

        switch (profile) {
            case InstanceProfile::JciNoAmazon: {
                expect(feasibility(game, v).necessary_pass, "necessary conditions fail");
                const MediatorSpec mediator = mediator_no_amazon(game, v);
                const VerificationReport report = verify_mediator(game, mediator, v);
                expect(report.certified, "not certified");
                expect(report.welfare == 1, "welfare " + to_string(report.welfare) + " != 1");
                break;
            }
            case InstanceProfile::JciAmazon: {
                expect(feasibility(game, v).necessary_pass, "necessary conditions fail");
                const MediatorSpec mediator = mediator_amazon(game, v);
                const VerificationReport report = verify_mediator(game, mediator, v);
                expect(report.certified, "not certified");
                const Rat vmax = rmax(v[0], v[1]);
                const Rat expected = rmin(rat(2, 3), 1 - vmax);
                expect(report.welfare == expected,
                       "welfare " + to_string(report.welfare) + " != " + to_string(expected));
                expect(!report.fully_revealing_to.empty(), "not fully revealing to anyone");
                if (3 * vmax > 1) {
                    bool binds = false;
                    for (PlayerId p : report.fully_revealing_to) {
                        if (report.ir_slacks[p] == 0) binds = true;
                    }
                    expect(binds, "participation constraint does not bind for a revealed player");
                }
                const HypotheticalChecks checks = hypothetical_deviation_checks(game, mediator);
                expect(checks.responder_not_better, "responder gains from the hypothetical");
                expect(checks.welfare_not_lower, "hypothetical lowers welfare");
                expect(report.welfare <= lp_opt(v).value, "welfare exceeds the program optimum");
                break;
            }
            case InstanceProfile::NoJciBalanced: {
                const MediatorSpec separating = mediator_separating(game, v);
                const VerificationReport report = verify_mediator(game, separating, v);
                expect(report.certified, "separating mediator not certified");
                expect(report.ratio == 1, "ratio " + to_string(report.ratio) + " != 1");
                const MediatorSpec classwise = mediator_classwise(game, v);
                expect(classwise.table == separating.table,
                       "classwise table differs on a balanced-only game");
                break;
            }
            case InstanceProfile::NoJciTopHeavy: {
                const MediatorSpec pooling = mediator_pooling(game, v);
                const VerificationReport report = verify_mediator(game, pooling, v);
                expect(report.certified, "pooling mediator not certified");
                expect(ratio_at_least_three_quarters(report),
                       "ratio " + to_string(report.ratio) + " below 3/4");
                const MediatorSpec classwise = mediator_classwise(game, v);
                expect(classwise.table == pooling.table,
                       "classwise table differs on a top-heavy-only game");
                break;
            }
            case InstanceProfile::NoJciMixed: {
                const MediatorSpec classwise = mediator_classwise(game, v);
                const VerificationReport report = verify_mediator(game, classwise, v);
                expect(report.certified, "classwise mediator not certified");
                expect(ratio_at_least_three_quarters(report),
                       "ratio " + to_string(report.ratio) + " below 3/4");
                break;
            }
            case InstanceProfile::NPlayerJci: {
                const auto equilibria = enumerate_pure_bne(game);
                expect(!equilibria.empty(), "generator produced a game without pure equilibria");
                if (equilibria.empty()) break;
                const MediatorSpec mediator = mediator_nplayer(game, equilibria.front().profile);
                const VerificationReport report = verify_mediator(game, mediator, v);
                expect(report.certified, "not certified");
                expect(report.welfare == 1, "welfare " + to_string(report.welfare) + " != 1");
                break;
            }
            case InstanceProfile::TransferJciAmazon: {
                const MediatorSpec mediator = transfer_mediator(game, v);
                const VerificationReport report = verify_mediator(game, mediator, v);
                expect(report.certified, "not certified");
                expect(report.welfare == rat(2, 3),
                       "welfare " + to_string(report.welfare) + " != 2/3");
                break;
            }
        }
    } catch (const EngineError& e) {
        failures.push_back(std::string("exception: ") + e.what());
    }

    out.pass = failures.empty();
    for (const std::string& f : failures) {
        if (!out.detail.empty()) out.detail += "; ";
        out.detail += f;
    }
    return out;
}

SweepSummary run_sweep(const SweepConfig& config) {
    SweepSummary summary;
    summary.outcomes.resize(config.count);
#ifdef _OPENMP
    if (config.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < config.count; ++k) {
            summary.outcomes[k] =
                check_instance(config.seed_start + k, config.profile, config.nplayers);
        }
    } else
#endif
    {
        for (int k = 0; k < config.count; ++k) {
            summary.outcomes[k] =
                check_instance(config.seed_start + k, config.profile, config.nplayers);
        }
    }
    for (const SweepOutcome& outcome : summary.outcomes) {
        (outcome.pass ? summary.passed : summary.failed) += 1;
    }
    return summary;
}

}  // namespace coopetition
