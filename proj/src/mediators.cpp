#include "coopetition/mediators.hpp"

#include <algorithm>
#include <map>

#include "coopetition/analysis.hpp"
#include "coopetition/strategy.hpp"

namespace coopetition {

CellKey joint_cell(const ValidatedGame& game, TypeId t) {
    CellKey key;
    key.cells.resize(game.num_players());
    for (PlayerId p = 0; p < game.num_players(); ++p) key.cells[p] = game.cell_of(p, t);
    return key;
}

void canonicalize(std::vector<RecEntry>& dist) {
    std::map<std::vector<GoodId>, Rat> merged;
    for (const RecEntry& e : dist) {
        if (e.prob != 0) merged[e.rec] += e.prob;
    }
    dist.clear();
    for (auto& [rec, prob] : merged) {
        if (prob != 0) dist.push_back({rec, prob});
    }
}

namespace {

void check_normalized(const std::vector<RecEntry>& dist) {
    Rat sum(0);
    for (const RecEntry& e : dist) {
        require(e.prob >= 0, Err::PreconditionViolated, "negative recommendation mass");
        sum += e.prob;
    }
    require(sum == 1, Err::PreconditionViolated,
            "cell distribution sums to " + to_string(sum));
}

void put_cell(MediatorSpec& mediator, const CellKey& key, std::vector<RecEntry> dist) {
    canonicalize(dist);
    check_normalized(dist);
    mediator.table[key] = std::move(dist);
}

Rat clamp01(const Rat& x) {
    if (x < 0) return Rat(0);
    if (x > 1) return Rat(1);
    return x;
}

PlayerId larger_value_player(const std::vector<Rat>& v) {
    require(v.size() == 2, Err::PreconditionViolated, "two base values required");
    return v[1] > v[0] ? 1 : 0;  // ties go to player 0
}

void require_two_player(const ValidatedGame& game) {
    require(game.num_players() == 2, Err::PreconditionViolated, "two regular players required");
}

// distinct joint cells with a representative type, in first-seen order
std::vector<std::pair<CellKey, TypeId>> distinct_cells(const ValidatedGame& game,
                                                       bool positive_prior_only) {
    std::vector<std::pair<CellKey, TypeId>> out;
    std::map<CellKey, bool> seen;
    for (TypeId t = 0; t < game.num_types(); ++t) {
        if (positive_prior_only && game.prior(t) == 0) continue;
        CellKey key = joint_cell(game, t);
        if (!seen.emplace(key, true).second) continue;
        out.push_back({std::move(key), t});
    }
    return out;
}

}  // namespace

MediatedGame induced_game(const ValidatedGame& game, const MediatorSpec& mediator) {
    MediatedGame out;
    out.mediator = mediator;
    out.obedient.players.resize(game.num_players());
    out.info_sets.resize(game.num_players());

    for (const auto& [key, dist] : mediator.table) {
        check_normalized(dist);
        for (const RecEntry& entry : dist) {
            for (PlayerId p = 0; p < game.num_players(); ++p) {
                require(entry.rec[p] >= 0 && entry.rec[p] < game.num_goods(), Err::UnknownGood,
                        "recommendation outside the good set");
                out.obedient.players[p].set(key.cells[p], entry.rec[p], pure(entry.rec[p]));
            }
        }
    }
    for (TypeId t = 0; t < game.num_types(); ++t) {
        if (game.prior(t) == 0) continue;
        auto it = mediator.table.find(joint_cell(game, t));
        if (it == mediator.table.end()) {
            fail(Err::MissingCell,
                 "no distribution for the joint cell of type " + game.spec().types[t]);
        }
        for (const RecEntry& entry : it->second) {
            for (PlayerId p = 0; p < game.num_players(); ++p) {
                out.info_sets[p][InfoSetKey{game.cell_of(p, t), entry.rec[p]}] +=
                    game.prior(t) * entry.prob;
            }
        }
    }
    return out;
}

MediatorSpec constant_mediator(const ValidatedGame& game, GoodId g) {
    require(g >= 0 && g < game.num_goods(), Err::UnknownGood, "constant recommendation");
    MediatorSpec mediator;
    mediator.label = "constant";
    for (const auto& [key, t] : distinct_cells(game, false)) {
        put_cell(mediator, key, {{std::vector<GoodId>(game.num_players(), g), Rat(1)}});
    }
    return mediator;
}

MediatorSpec echo_mediator(const ValidatedGame& game, const StrategyProfile& profile) {
    require(static_cast<int>(profile.players.size()) == game.num_players(),
            Err::ProfileIncomplete, "profile has wrong player count");
    MediatorSpec mediator;
    mediator.label = "echo";
    for (const auto& [key, t] : distinct_cells(game, false)) {
        std::vector<RecEntry> dist{{std::vector<GoodId>(game.num_players(), -1), Rat(1)}};
        for (PlayerId p = 0; p < game.num_players(); ++p) {
            const GoodDist& mix = profile.players[p].at(InfoSetKey{key.cells[p], kNoMessage});
            std::vector<RecEntry> next;
            for (const RecEntry& partial : dist) {
                for (const auto& [g, q] : mix) {
                    RecEntry e = partial;
                    e.rec[p] = g;
                    e.prob *= q;
                    next.push_back(std::move(e));
                }
            }
            dist = std::move(next);
        }
        put_cell(mediator, key, std::move(dist));
    }
    return mediator;
}

MediatorSpec full_revelation_mediator(const ValidatedGame& game) {
    require(build_segments(game).jointly_complete, Err::PreconditionViolated,
            "full revelation needs jointly complete information");
    MediatorSpec mediator;
    mediator.label = "full_revelation";
    for (const auto& [key, t] : distinct_cells(game, false)) {
        put_cell(mediator, key,
                 {{std::vector<GoodId>(game.num_players(), game.desired(t)), Rat(1)}});
    }
    return mediator;
}

MediatorSpec equilibrium_revelation_mediator(const ValidatedGame& game,
                                             const StrategyProfile& equilibrium) {
    require(build_segments(game).jointly_complete, Err::PreconditionViolated,
            "construction needs jointly complete information");
    MediatorSpec mediator = echo_mediator(game, equilibrium);
    mediator.label = "equilibrium_revelation";
    // move the mass of all-wrong tuples to full revelation
    for (const auto& [key, t] : distinct_cells(game, false)) {
        auto& dist = mediator.table[key];
        const GoodId correct = game.desired(t);
        Rat wrong_mass(0);
        std::vector<RecEntry> kept;
        for (RecEntry& e : dist) {
            const bool all_wrong =
                std::none_of(e.rec.begin(), e.rec.end(), [&](GoodId g) { return g == correct; });
            if (all_wrong) {
                wrong_mass += e.prob;
            } else {
                kept.push_back(std::move(e));
            }
        }
        if (wrong_mass > 0) {
            kept.push_back({std::vector<GoodId>(game.num_players(), correct), wrong_mass});
        }
        canonicalize(kept);
        check_normalized(kept);
        dist = std::move(kept);
    }
    return mediator;
}

MediatorSpec mediator_nplayer(const ValidatedGame& game, const StrategyProfile& equilibrium) {
    require(!game.amazon(), Err::PreconditionViolated,
            "construction is for games without the outside competitor");
    const BneVerdict verdict = check_bne(game, equilibrium);
    require(verdict.is_equilibrium, Err::NotABne,
            "reference profile admits a deviation gaining " + to_string(verdict.max_gain));
    MediatorSpec mediator = equilibrium_revelation_mediator(game, equilibrium);
    mediator.label = "nplayer";
    return mediator;
}

MediatorSpec mediator_no_amazon(const ValidatedGame& game, const std::vector<Rat>& v) {
    require_two_player(game);
    require(!game.amazon(), Err::PreconditionViolated,
            "construction is for games without the outside competitor");
    const FeasibilityVerdict verdict = feasibility(game, v);
    if (!verdict.necessary_pass) {
        std::string detail;
        for (const auto& cond : verdict.violated) detail += (detail.empty() ? "" : "; ") + cond;
        fail(Err::InfeasibleBaseValues, detail);
    }
    const PlayerId i = larger_value_player(v);
    const PlayerId j = 1 - i;

    if (2 * v[i] <= 1) {
        MediatorSpec mediator = full_revelation_mediator(game);
        mediator.label = "no_amazon";
        return mediator;
    }
    const NaiveBestResponse naive = naive_best_response(game, i, NaiveVariant::Jci);
    const Rat& a = naive.alpha_responder;
    require(a < 1, Err::DegenerateAlpha, "responder is always correct");
    const Rat p = clamp01((2 - 2 * v[i] - a) / (1 - a));

    MediatorSpec mediator;
    mediator.label = "no_amazon";
    for (const auto& [key, t] : distinct_cells(game, true)) {
        const GoodId correct = game.desired(t);
        std::vector<GoodId> reveal(2, correct);
        std::vector<GoodId> partial(2, correct);
        partial[j] = naive.strategy.at(InfoSetKey{key.cells[j], kNoMessage}).front().first;
        put_cell(mediator, key, {{reveal, p}, {partial, 1 - p}});
    }
    return mediator;
}

MediatorSpec mediator_amazon(const ValidatedGame& game, const std::vector<Rat>& v) {
    require_two_player(game);
    require(game.amazon(), Err::PreconditionViolated,
            "construction needs the outside competitor");
    const FeasibilityVerdict verdict = feasibility(game, v);
    if (!verdict.necessary_pass) {
        std::string detail;
        for (const auto& cond : verdict.violated) detail += (detail.empty() ? "" : "; ") + cond;
        fail(Err::InfeasibleBaseValues, detail);
    }
    const PlayerId i = larger_value_player(v);
    const PlayerId j = 1 - i;

    if (3 * v[i] <= 1) {
        MediatorSpec mediator = full_revelation_mediator(game);
        mediator.label = "amazon";
        return mediator;
    }
    const NaiveBestResponse naive = naive_best_response(game, i, NaiveVariant::Jci);
    const Rat& a = naive.alpha_responder;
    require(a < 1, Err::DegenerateAlpha, "responder is always correct");
    const Rat p = clamp01((3 - 6 * v[i] - a) / (1 - a));

    MediatorSpec mediator;
    mediator.label = "amazon";
    for (const auto& [key, t] : distinct_cells(game, true)) {
        const GoodId correct = game.desired(t);
        std::vector<GoodId> reveal(2, correct);
        std::vector<GoodId> partial(2, correct);
        partial[j] = naive.strategy.at(InfoSetKey{key.cells[j], kNoMessage}).front().first;
        put_cell(mediator, key, {{reveal, p}, {partial, 1 - p}});
    }
    return mediator;
}

namespace {

// Separating cells: recommend the segment's top and second goods, mixing who
// takes the top role. Used on balanced segments.
void build_separating_cells(MediatorSpec& mediator, const ValidatedGame& game,
                            const SegmentTable& segs, const SegmentStats& st,
                            const std::vector<int>& segments, const Rat& phi_top,
                            const Rat& phi_second, const std::vector<Rat>& v, PlayerId i) {
    const PlayerId j = 1 - i;
    Rat p_top(1);
    bool symmetric = phi_top == phi_second;
    if (!symmetric) p_top = clamp01((2 * v[i] - phi_second) / (phi_top - phi_second));
    for (int s : segments) {
        const TypeId rep = segs.segments[s].front();
        const CellKey key = joint_cell(game, rep);
        std::vector<GoodId> i_top(2), j_top(2);
        i_top[i] = st.top_good[s];
        i_top[j] = st.second_good[s];
        j_top[i] = st.second_good[s];
        j_top[j] = st.top_good[s];
        if (symmetric) {
            // deterministic: player 1 takes the top role
            std::vector<GoodId> fixed{st.top_good[s], st.second_good[s]};
            put_cell(mediator, key, {{fixed, Rat(1)}});
        } else {
            put_cell(mediator, key, {{i_top, p_top}, {j_top, 1 - p_top}});
        }
    }
}

// Pooling cells: recommend the segment's top good to both, or mix pooling
// with handing the responder her naive action. Used on top-heavy segments.
void build_pooling_cells(MediatorSpec& mediator, const ValidatedGame& game,
                         const SegmentTable& segs, const SegmentStats& st,
                         const std::vector<int>& segments, const Rat& phi_top,
                         const std::vector<Rat>& v, const NaiveBestResponse& naive) {
    const PlayerId i = naive.informed;
    const PlayerId j = naive.responder;
    Rat p_pool(1);
    if (3 * v[i] > phi_top) {
        if (v[i] >= naive.alpha_informed) {
            p_pool = 0;
        } else {
            p_pool = (3 * naive.alpha_informed - 3 * v[i]) / (3 * naive.alpha_informed - phi_top);
        }
    }
    std::map<CellKey, bool> done;
    for (int s : segments) {
        for (TypeId t : segs.segments[s]) {
            const CellKey key = joint_cell(game, t);
            if (!done.emplace(key, true).second) continue;
            std::vector<GoodId> pool(2, st.top_good[s]);
            if (p_pool == 1) {
                put_cell(mediator, key, {{pool, Rat(1)}});
                continue;
            }
            std::vector<GoodId> split(2, st.top_good[s]);
            split[j] = naive.strategy.at(InfoSetKey{key.cells[j], kNoMessage}).front().first;
            put_cell(mediator, key, {{pool, p_pool}, {split, 1 - p_pool}});
        }
    }
}

std::vector<int> segments_in_class(const SegmentTable& segs, const SegmentStats& st,
                                   SegmentClass cls) {
    std::vector<int> out;
    for (int s = 0; s < static_cast<int>(segs.segments.size()); ++s) {
        if (st.segment_prob[s] > 0 && st.seg_class[s] == cls) out.push_back(s);
    }
    return out;
}

}  // namespace

MediatorSpec mediator_separating(const ValidatedGame& game, const std::vector<Rat>& v) {
    require_two_player(game);
    require(game.amazon(), Err::PreconditionViolated,
            "construction needs the outside competitor");
    const SegmentTable segs = build_segments(game);
    const SegmentStats st = segment_stats(segs, game);
    require(segments_in_class(segs, st, SegmentClass::TopHeavy).empty(),
            Err::PreconditionViolated, "every segment must be balanced");
    require(2 * (v[0] + v[1]) <= st.phi_top + st.phi_second, Err::InfeasibleBaseValues,
            "v_1 + v_2 exceeds (phi_top + phi_second)/2");
    const PlayerId i = larger_value_player(v);
    require(2 * v[i] <= st.phi_top, Err::InfeasibleBaseValues, "max(v) exceeds phi_top/2");

    MediatorSpec mediator;
    mediator.label = "separating";
    build_separating_cells(mediator, game, segs, st,
                           segments_in_class(segs, st, SegmentClass::Balanced), st.phi_top,
                           st.phi_second, v, i);
    return mediator;
}

MediatorSpec mediator_pooling(const ValidatedGame& game, const std::vector<Rat>& v) {
    require_two_player(game);
    require(game.amazon(), Err::PreconditionViolated,
            "construction needs the outside competitor");
    const SegmentTable segs = build_segments(game);
    const SegmentStats st = segment_stats(segs, game);
    require(segments_in_class(segs, st, SegmentClass::Balanced).empty(),
            Err::PreconditionViolated, "every segment must be top-heavy");
    const PlayerId i = larger_value_player(v);
    const NaiveBestResponse naive = naive_best_response(game, i, NaiveVariant::NoJci);
    // pooling alone covers both base values when max(v) <= phi_top/3; the
    // paired conditions matter only once the mixture branch is reached
    if (3 * v[i] > st.phi_top) {
        require(v[i] <= naive.alpha_informed, Err::InfeasibleBaseValues,
                "max(v) exceeds the informed player's hypothetical value");
        require(v[1 - i] + v[i] <= st.phi_top / 2, Err::InfeasibleBaseValues,
                "min(v) exceeds phi_top/2 - max(v)");
    }

    MediatorSpec mediator;
    mediator.label = "pooling";
    build_pooling_cells(mediator, game, segs, st,
                        segments_in_class(segs, st, SegmentClass::TopHeavy), st.phi_top, v,
                        naive);
    return mediator;
}

MediatorSpec mediator_classwise(const ValidatedGame& game, const std::vector<Rat>& v) {
    require_two_player(game);
    require(game.amazon(), Err::PreconditionViolated,
            "construction needs the outside competitor");
    const SegmentTable segs = build_segments(game);
    const SegmentStats st = segment_stats(segs, game);
    const std::vector<int> balanced = segments_in_class(segs, st, SegmentClass::Balanced);
    const std::vector<int> top_heavy = segments_in_class(segs, st, SegmentClass::TopHeavy);
    const PlayerId i = larger_value_player(v);
    const PlayerId j = 1 - i;

    MediatorSpec mediator;
    mediator.label = "classwise";

    if (top_heavy.empty()) {
        require(2 * (v[0] + v[1]) <= st.phi_top_balanced + st.phi_second_balanced,
                Err::InfeasibleBaseValues, "v_1 + v_2 exceeds (phi_top + phi_second)/2");
        require(2 * v[i] <= st.phi_top_balanced, Err::InfeasibleBaseValues,
                "max(v) exceeds phi_top/2");
        build_separating_cells(mediator, game, segs, st, balanced, st.phi_top_balanced,
                               st.phi_second_balanced, v, i);
        return mediator;
    }
    const NaiveBestResponse naive = naive_best_response(game, i, NaiveVariant::NoJciTopHeavy);
    if (balanced.empty()) {
        if (3 * v[i] > st.phi_top_heavy) {
            require(v[i] <= naive.alpha_informed, Err::InfeasibleBaseValues,
                    "max(v) exceeds the informed player's hypothetical value");
            require(v[j] + v[i] <= st.phi_top_heavy / 2, Err::InfeasibleBaseValues,
                    "min(v) exceeds phi_top/2 - max(v)");
        }
        build_pooling_cells(mediator, game, segs, st, top_heavy, st.phi_top_heavy, v, naive);
        return mediator;
    }
    require(2 * (v[0] + v[1]) <= st.phi_top_balanced + st.phi_second_balanced,
            Err::InfeasibleBaseValues,
            "v_1 + v_2 exceeds the balanced-class separating welfare");
    const Rat half_top_balanced = st.phi_top_balanced / 2;
    require(v[i] <= rmax(naive.alpha_informed, half_top_balanced),
            Err::InfeasibleBaseValues, "max(v) exceeds both class bounds");
    require(v[j] + v[i] <= st.phi_top_heavy / 2, Err::InfeasibleBaseValues,
            "min(v) exceeds the top-heavy class bound");
    build_separating_cells(mediator, game, segs, st, balanced, st.phi_top_balanced,
                           st.phi_second_balanced, v, i);
    build_pooling_cells(mediator, game, segs, st, top_heavy, st.phi_top_heavy, v, naive);
    return mediator;
}

MediatorSpec transfer_mediator(const ValidatedGame& game, const std::vector<Rat>& v) {
    require_two_player(game);
    require(game.amazon(), Err::PreconditionViolated,
            "construction needs the outside competitor");
    const SegmentTable segs = build_segments(game);
    const SegmentStats st = segment_stats(segs, game);
    for (int s = 0; s < static_cast<int>(segs.segments.size()); ++s) {
        if (st.segment_prob[s] == 0) continue;
        require(st.top_weight[s] > 3 * st.second_weight[s], Err::PreconditionViolated,
                "pooling must dominate separation on every segment");
    }
    require(3 * (v[0] + v[1]) <= 2 * st.phi_top, Err::InfeasibleBaseValues,
            "v_1 + v_2 exceeds (2/3) phi_top");
    const PlayerId i = larger_value_player(v);
    const Rat pooled = st.phi_top / 3;

    MediatorSpec mediator;
    mediator.label = "transfer";
    for (int s = 0; s < static_cast<int>(segs.segments.size()); ++s) {
        if (st.segment_prob[s] == 0) continue;
        const CellKey key = joint_cell(game, segs.segments[s].front());
        put_cell(mediator, key, {{std::vector<GoodId>(2, st.top_good[s]), Rat(1)}});
    }
    if (v[i] > pooled) {
        mediator.transfer = Transfer{1 - i, i, v[i] - pooled};
    }
    return mediator;
}

}  // namespace coopetition
