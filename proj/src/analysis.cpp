#include "coopetition/analysis.hpp"

#include <algorithm>
#include <map>

namespace coopetition {

LpSolution lp_opt(const std::vector<Rat>& v) {
    require(v.size() == 2, Err::PreconditionViolated, "two base values required");
    LpSolution sol;
    sol.i = v[1] > v[0] ? 1 : 0;
    const Rat& vi = v[sol.i];
    const Rat& vj = v[1 - sol.i];
    require(vj >= 0 && vi >= 0, Err::PreconditionViolated, "negative base value");
    if (2 * vi + vj > 1) {
        fail(Err::LpInfeasible, "2*max(v) + min(v) = " + to_string(2 * vi + vj) + " > 1");
    }
    if (3 * vi <= 1) {
        sol.beta_i = 0;
        sol.beta_j = 0;
        sol.beta = 1;
        sol.value = rat(2, 3);
    } else {
        sol.beta_i = 6 * vi - 2;
        sol.beta_j = 0;
        sol.beta = 3 - 6 * vi;
        sol.value = 1 - vi;
    }
    return sol;
}

FeasibilityVerdict feasibility(const ValidatedGame& game, const std::vector<Rat>& v) {
    require(game.num_players() == 2, Err::PreconditionViolated, "two regular players required");
    require(v.size() == 2, Err::PreconditionViolated, "two base values required");
    require(build_segments(game).jointly_complete, Err::PreconditionViolated,
            "feasibility conditions assume jointly complete information");
    const PlayerId i = v[1] > v[0] ? 1 : 0;
    const PlayerId j = 1 - i;
    const NaiveBestResponse naive = naive_best_response(game, i, NaiveVariant::Jci);

    FeasibilityVerdict verdict;
    if (!game.amazon() && v[0] + v[1] > 1) {
        verdict.violated.push_back("v_1 + v_2 <= 1 (observed " + to_string(v[0] + v[1]) + ")");
    }
    if (v[i] > naive.alpha_informed) {
        verdict.violated.push_back("max(v) <= full-information value against the naive response (" +
                                   to_string(v[i]) + " > " + to_string(naive.alpha_informed) + ")");
    }
    if (game.amazon() && v[j] > 1 - 2 * v[i]) {
        verdict.violated.push_back("min(v) <= 1 - 2*max(v) (" + to_string(v[j]) + " > " +
                                   to_string(1 - 2 * v[i]) + ")");
    }
    verdict.necessary_pass = verdict.violated.empty();
    return verdict;
}

Rat opt_benchmark(const ValidatedGame& game) {
    const SegmentTable segs = build_segments(game);
    const int N = game.num_players();
    Rat opt(0);
    for (const auto& segment : segs.segments) {
        // candidate actions: goods with positive weight in the segment
        std::map<GoodId, Rat> weight;
        for (TypeId t : segment) {
            if (game.prior(t) > 0) weight[game.desired(t)] += game.prior(t);
        }
        if (weight.empty()) continue;
        std::vector<GoodId> goods;
        for (const auto& [g, w] : weight) goods.push_back(g);

        std::vector<int> pick(N, 0);
        Rat best(0);
        while (true) {
            Rat welfare(0);
            for (TypeId t : segment) {
                if (game.prior(t) == 0) continue;
                int offered = 0;
                for (int p = 0; p < N; ++p) {
                    if (goods[pick[p]] == game.desired(t)) ++offered;
                }
                if (offered > 0) {
                    welfare += game.prior(t) * offered / (offered + (game.amazon() ? 1 : 0));
                }
            }
            if (welfare > best) best = welfare;
            int p = N - 1;
            while (p >= 0 && ++pick[p] == static_cast<int>(goods.size())) pick[p--] = 0;
            if (p < 0) break;
        }
        opt += best;
    }
    return opt;
}

VerificationReport verify_mediator(const ValidatedGame& game, const MediatorSpec& mediator,
                                   const std::vector<Rat>& v) {
    require(v.size() == static_cast<size_t>(game.num_players()), Err::PreconditionViolated,
            "one base value per regular player");
    const MediatedGame induced = induced_game(game, mediator);

    VerificationReport report;
    report.ic = check_bne(game, induced.obedient, &mediator);
    report.utilities = expected_utilities(game, induced.obedient, &mediator);
    if (mediator.transfer) {
        const Transfer& tr = *mediator.transfer;
        require(tr.amount >= 0, Err::PreconditionViolated, "negative transfer");
        require(tr.payer >= 0 && tr.payer < game.num_players() && tr.payee >= 0 &&
                    tr.payee < game.num_players() && tr.payer != tr.payee,
                Err::PreconditionViolated, "transfer endpoints");
        report.utilities[tr.payer] -= tr.amount;
        report.utilities[tr.payee] += tr.amount;
    }
    report.welfare = 0;
    for (const Rat& u : report.utilities) report.welfare += u;
    report.ir_slacks.reserve(v.size());
    bool ir = true;
    for (size_t p = 0; p < v.size(); ++p) {
        report.ir_slacks.push_back(report.utilities[p] - v[p]);
        if (report.ir_slacks.back() < 0) ir = false;
    }
    report.opt = opt_benchmark(game);
    report.ratio = report.opt > 0 ? report.welfare / report.opt : Rat(0);

    for (PlayerId p = 0; p < game.num_players(); ++p) {
        bool revealing = true;
        for (TypeId t = 0; t < game.num_types() && revealing; ++t) {
            if (game.prior(t) == 0) continue;
            const auto& dist = mediator.table.at(joint_cell(game, t));
            for (const RecEntry& entry : dist) {
                if (entry.prob > 0 && entry.rec[p] != game.desired(t)) {
                    revealing = false;
                    break;
                }
            }
        }
        if (revealing) report.fully_revealing_to.push_back(p);
    }
    report.certified = report.ic.is_equilibrium && ir;
    return report;
}

HypotheticalChecks hypothetical_deviation_checks(const ValidatedGame& game, const MediatorSpec& mediator) {
    require(game.num_players() == 2, Err::PreconditionViolated, "two regular players required");
    require(game.amazon(), Err::PreconditionViolated, "checks assume the outside competitor");
    require(build_segments(game).jointly_complete, Err::PreconditionViolated,
            "checks assume jointly complete information");
    const PlayerId i = game.base_values()[1] > game.base_values()[0] ? 1 : 0;
    const PlayerId j = 1 - i;
    const MediatedGame induced = induced_game(game, mediator);

    // j's best response when i always offers the correct good: maximize the
    // conditional probability of being correct given (cell, message)
    std::map<InfoSetKey, std::vector<Rat>> weight;  // per good
    for (TypeId t = 0; t < game.num_types(); ++t) {
        if (game.prior(t) == 0) continue;
        for (const RecEntry& entry : mediator.table.at(joint_cell(game, t))) {
            if (entry.prob == 0) continue;
            auto [it, fresh] =
                weight.try_emplace(InfoSetKey{game.cell_of(j, t), entry.rec[j]});
            if (fresh) it->second.assign(game.num_goods(), Rat(0));
            it->second[game.desired(t)] += game.prior(t) * entry.prob;
        }
    }
    std::map<InfoSetKey, GoodId> response;
    for (const auto& [key, value] : weight) {
        GoodId best = 0;
        for (GoodId g = 1; g < game.num_goods(); ++g) {
            if (value[g] > value[best]) best = g;
        }
        response[key] = best;
    }

    HypotheticalChecks checks;
    checks.responder_deviation_value = 0;
    checks.hypothetical_welfare = 0;
    for (TypeId t = 0; t < game.num_types(); ++t) {
        if (game.prior(t) == 0) continue;
        for (const RecEntry& entry : mediator.table.at(joint_cell(game, t))) {
            if (entry.prob == 0) continue;
            const Rat w = game.prior(t) * entry.prob;
            const bool j_correct =
                response.at(InfoSetKey{game.cell_of(j, t), entry.rec[j]}) == game.desired(t);
            if (j_correct) {
                checks.responder_deviation_value += w / 3;
                checks.hypothetical_welfare += w * 2 / 3;
            } else {
                checks.hypothetical_welfare += w / 2;
            }
        }
    }
    const std::vector<Rat> obedient = expected_utilities(game, induced.obedient, &mediator);
    checks.responder_obedient_value = obedient[j];
    checks.obedient_welfare = obedient[0] + obedient[1];
    checks.responder_not_better =
        checks.responder_deviation_value <= checks.responder_obedient_value;
    checks.welfare_not_lower = checks.hypothetical_welfare >= checks.obedient_welfare;
    return checks;
}

StrictBenefit strict_benefit(const ValidatedGame& game, const EnumerateOptions& options) {
    require(build_segments(game).jointly_complete, Err::PreconditionViolated,
            "comparison assumes jointly complete information");
    const std::vector<PureBne> equilibria = enumerate_pure_bne(game, options);
    if (equilibria.empty()) {
        fail(Err::NoPureBne, "the unmediated game has no pure equilibrium");
    }

    StrictBenefit out;
    const PureBne& best = equilibria.front();  // welfare-maximal
    out.benchmark = 0;
    for (const Rat& u : best.utilities) out.benchmark += u;

    if (!game.amazon()) {
        out.witness = mediator_nplayer(game, best.profile);
        const MediatedGame induced = induced_game(game, out.witness);
        out.witness_utilities = expected_utilities(game, induced.obedient, &out.witness);
        Rat welfare(0);
        for (const Rat& u : out.witness_utilities) welfare += u;
        out.beneficial = welfare > out.benchmark;
        return out;
    }

    require(game.num_players() == 2, Err::PreconditionViolated,
            "competitor-side comparison handles two regular players");
    out.beneficial = true;
    for (size_t k = 0; k < equilibria.size(); ++k) {
        const MediatorSpec mediator = mediator_amazon(game, equilibria[k].utilities);
        const MediatedGame induced = induced_game(game, mediator);
        const std::vector<Rat> utils = expected_utilities(game, induced.obedient, &mediator);
        Rat welfare = utils[0] + utils[1];
        Rat reference = equilibria[k].utilities[0] + equilibria[k].utilities[1];
        if (welfare <= reference) out.beneficial = false;
        if (k == 0) {
            out.witness = mediator;
            out.witness_utilities = utils;
        }
    }
    return out;
}

}  // namespace coopetition
