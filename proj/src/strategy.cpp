#include "coopetition/strategy.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace coopetition {

namespace {

struct InfoAccum {
    Rat prob;                // reach probability of the information set
    std::vector<Rat> value;  // conditional (unnormalized) value of each action
};

// Conditional action values of one player at every reachable information
// set, holding the other players fixed. Only the realized correct good can
// yield utility, so each outcome touches a single value slot.
std::map<InfoSetKey, InfoAccum> accumulate_info_sets(const ValidatedGame& game,
                                                     const StrategyProfile& profile,
                                                     PlayerId player,
                                                     const MediatorSpec* mediator) {
    const int N = game.num_players();
    const int G = game.num_goods();
    const std::vector<RecEntry> silent{{std::vector<GoodId>(N, kNoMessage), Rat(1)}};
    std::map<InfoSetKey, InfoAccum> acc;
    std::vector<const GoodDist*> dists(N - 1);
    std::vector<int> opponents;
    for (PlayerId p = 0; p < N; ++p) {
        if (p != player) opponents.push_back(p);
    }
    std::vector<int> pos(N - 1, 0);

    for (TypeId t = 0; t < game.num_types(); ++t) {
        if (game.prior(t) == 0) continue;
        const GoodId correct = game.desired(t);
        const std::vector<RecEntry>* entries = &silent;
        if (mediator) {
            auto it = mediator->table.find(joint_cell(game, t));
            if (it == mediator->table.end()) {
                fail(Err::MissingCell,
                     "no distribution for the joint cell of type " + game.spec().types[t]);
            }
            entries = &it->second;
        }
        for (const RecEntry& entry : *entries) {
            if (entry.prob == 0) continue;
            InfoSetKey key{game.cell_of(player, t), entry.rec[player]};
            auto [it, fresh] = acc.try_emplace(key);
            InfoAccum& a = it->second;
            if (fresh) {
                a.prob = 0;
                a.value.assign(G, Rat(0));
            }
            const Rat base = game.prior(t) * entry.prob;
            a.prob += base;
            for (size_t k = 0; k < opponents.size(); ++k) {
                dists[k] = &profile.players[opponents[k]].at(
                    InfoSetKey{game.cell_of(opponents[k], t), entry.rec[opponents[k]]});
            }
            std::fill(pos.begin(), pos.end(), 0);
            while (true) {
                Rat w = base;
                int others = game.amazon() ? 1 : 0;
                for (size_t k = 0; k < dists.size(); ++k) {
                    const auto& [g, q] = (*dists[k])[pos[k]];
                    w *= q;
                    if (g == correct) ++others;
                }
                a.value[correct] += w / (others + 1);
                int k = static_cast<int>(dists.size()) - 1;
                while (k >= 0 && ++pos[k] == static_cast<int>(dists[k]->size())) pos[k--] = 0;
                if (k < 0) break;
            }
        }
    }
    return acc;
}

GoodId prior_mode_good(const ValidatedGame& game) {
    std::vector<Rat> mass(game.num_goods(), Rat(0));
    for (TypeId t = 0; t < game.num_types(); ++t) mass[game.desired(t)] += game.prior(t);
    GoodId best = 0;
    for (GoodId g = 1; g < game.num_goods(); ++g) {
        if (mass[g] > mass[best]) best = g;
    }
    return best;
}

}  // namespace

BneVerdict check_bne(const ValidatedGame& game, const StrategyProfile& profile,
                     const MediatorSpec* mediator) {
    const int N = game.num_players();
    require(static_cast<int>(profile.players.size()) == N, Err::ProfileIncomplete,
            "profile has wrong player count");
    BneVerdict verdict;
    verdict.max_gain = 0;
    for (PlayerId i = 0; i < N; ++i) {
        auto acc = accumulate_info_sets(game, profile, i, mediator);
        for (const auto& [key, a] : acc) {
            if (a.prob == 0) continue;
            Rat current(0);
            for (const auto& [g, q] : profile.players[i].at(key)) current += q * a.value[g];
            const Rat best = *std::max_element(a.value.begin(), a.value.end());
            Rat gain = (best - current) / a.prob;
            if (gain > verdict.max_gain) {
                verdict.max_gain = gain;
                verdict.worst_deviator = i;
            }
        }
    }
    verdict.is_equilibrium = verdict.max_gain <= 0;
    if (verdict.is_equilibrium) verdict.worst_deviator.reset();
    return verdict;
}

BestResponse best_response(const ValidatedGame& game, const StrategyProfile& profile,
                           PlayerId player, const MediatorSpec* mediator) {
    auto acc = accumulate_info_sets(game, profile, player, mediator);

    // every information set the player could conceivably hold
    std::set<InfoSetKey> keys;
    if (mediator) {
        for (const auto& [cell, dist] : mediator->table) {
            for (const RecEntry& entry : dist) keys.insert({cell.cells[player], entry.rec[player]});
        }
    } else {
        for (int c = 0; c < game.num_cells(player); ++c) keys.insert({c, kNoMessage});
    }

    const GoodId fallback = prior_mode_good(game);
    BestResponse out;
    for (const InfoSetKey& key : keys) {
        auto it = acc.find(key);
        if (it == acc.end() || it->second.prob == 0) {
            // off-path set: posterior undefined, play the prior's mode
            out.strategy.play[key] = pure(fallback);
            continue;
        }
        const auto& value = it->second.value;
        GoodId best = 0;
        for (GoodId g = 1; g < game.num_goods(); ++g) {
            if (value[g] > value[best]) best = g;
        }
        out.strategy.play[key] = pure(best);
    }
    StrategyProfile replaced = profile;
    replaced.players[player] = out.strategy;
    out.value = expected_utilities(game, replaced, mediator)[player];
    return out;
}

NaiveBestResponse naive_best_response(const ValidatedGame& game, PlayerId informed,
                                      NaiveVariant variant) {
    require(game.num_players() == 2, Err::VariantMismatch, "two regular players required");
    const PlayerId j = 1 - informed;
    const SegmentTable segs = build_segments(game);
    const SegmentStats st = segment_stats(segs, game);
    if (variant == NaiveVariant::Jci) {
        require(segs.jointly_complete, Err::VariantMismatch,
                "variant requires jointly complete information");
    }
    if (variant == NaiveVariant::NoJciTopHeavy) {
        require(st.has_top_heavy(), Err::VariantMismatch, "no top-heavy segments");
    }

    NaiveBestResponse out;
    out.informed = informed;
    out.responder = j;
    out.variant = variant;

    auto informed_plays = [&](TypeId t) -> GoodId {
        return variant == NaiveVariant::Jci ? game.desired(t) : st.top_good[segs.membership[t]];
    };
    auto in_scope = [&](TypeId t) {
        return variant != NaiveVariant::NoJciTopHeavy ||
               st.seg_class[segs.membership[t]] == SegmentClass::TopHeavy;
    };

    // responder's choice per cell: argmax of conditional expected utility in
    // the hypothetical; ties go to the lowest good
    std::vector<GoodId> choice(game.num_cells(j), -1);
    for (int c = 0; c < game.num_cells(j); ++c) {
        std::vector<Rat> value(game.num_goods(), Rat(0));
        bool any = false;
        for (TypeId t : game.cell_members(j, c)) {
            if (!in_scope(t) || game.prior(t) == 0) continue;
            any = true;
            const int offered = 1 + (game.amazon() ? 1 : 0) +
                                (informed_plays(t) == game.desired(t) ? 1 : 0);
            value[game.desired(t)] += game.prior(t) / offered;
        }
        if (!any) continue;  // cell outside the conditioning event
        GoodId best = 0;
        for (GoodId g = 1; g < game.num_goods(); ++g) {
            if (value[g] > value[best]) best = g;
        }
        choice[c] = best;
        out.strategy.set(c, kNoMessage, pure(best));
    }

    Rat scope_prob(0), responder_value(0), responder_correct(0), informed_value(0);
    for (TypeId t = 0; t < game.num_types(); ++t) {
        if (!in_scope(t) || game.prior(t) == 0) continue;
        scope_prob += game.prior(t);
        const GoodId gi = informed_plays(t);
        const GoodId gj = choice[game.cell_of(j, t)];
        const bool i_correct = gi == game.desired(t);
        const bool j_correct = gj == game.desired(t);
        const int offered = (game.amazon() ? 1 : 0) + (i_correct ? 1 : 0) + (j_correct ? 1 : 0);
        if (j_correct) {
            responder_correct += game.prior(t);
            responder_value += game.prior(t) / offered;
        }
        if (i_correct) informed_value += game.prior(t) / offered;
    }
    if (variant == NaiveVariant::Jci) {
        out.alpha_responder = responder_correct;
        out.alpha_informed = informed_value;
    } else if (variant == NaiveVariant::NoJci) {
        out.alpha_responder = responder_value;
        out.alpha_informed = informed_value;
    } else {
        out.alpha_responder = responder_value / scope_prob;
        out.alpha_informed = informed_value / scope_prob;
    }
    return out;
}

std::uint64_t default_bne_budget() {
    if (const char* env = std::getenv("COOPETITION_BNE_BUDGET")) {
        const std::uint64_t parsed = std::strtoull(env, nullptr, 10);
        if (parsed > 0) return parsed;
    }
    return 2'000'000;
}

namespace {

// pure strategies as one action per cell, [player][cell]
using PureActions = std::vector<std::vector<GoodId>>;

void decode_profile(const ValidatedGame& game, std::uint64_t index, PureActions& actions) {
    const std::uint64_t G = game.num_goods();
    for (PlayerId p = 0; p < game.num_players(); ++p) {
        for (int c = 0; c < game.num_cells(p); ++c) {
            actions[p][c] = static_cast<GoodId>(index % G);
            index /= G;
        }
    }
}

// Early-exit equilibrium test for a pure profile of the unmediated game.
bool is_pure_bne(const ValidatedGame& game, const PureActions& actions,
                 std::vector<Rat>& value_scratch) {
    for (PlayerId i = 0; i < game.num_players(); ++i) {
        for (int c = 0; c < game.num_cells(i); ++c) {
            std::fill(value_scratch.begin(), value_scratch.end(), Rat(0));
            for (TypeId t : game.cell_members(i, c)) {
                if (game.prior(t) == 0) continue;
                int others = game.amazon() ? 1 : 0;
                for (PlayerId p = 0; p < game.num_players(); ++p) {
                    if (p != i && actions[p][game.cell_of(p, t)] == game.desired(t)) ++others;
                }
                value_scratch[game.desired(t)] += game.prior(t) / (others + 1);
            }
            const Rat& mine = value_scratch[actions[i][c]];
            for (GoodId g = 0; g < game.num_goods(); ++g) {
                if (value_scratch[g] > mine) return false;
            }
        }
    }
    return true;
}

StrategyProfile to_profile(const ValidatedGame& game, const PureActions& actions) {
    StrategyProfile profile;
    profile.players.resize(game.num_players());
    for (PlayerId p = 0; p < game.num_players(); ++p) {
        for (int c = 0; c < game.num_cells(p); ++c) {
            profile.players[p].set(c, kNoMessage, pure(actions[p][c]));
        }
    }
    return profile;
}

}  // namespace

std::vector<PureBne> enumerate_pure_bne(const ValidatedGame& game,
                                        const EnumerateOptions& options) {
    const std::uint64_t G = game.num_goods();
    std::uint64_t total = 1;
    for (PlayerId p = 0; p < game.num_players(); ++p) {
        for (int c = 0; c < game.num_cells(p); ++c) {
            if (total > options.budget / G + 1) {
                fail(Err::BudgetExceeded, "profile space exceeds the enumeration budget");
            }
            total *= G;
        }
    }
    require(total <= options.budget, Err::BudgetExceeded,
            std::to_string(total) + " profiles exceed the enumeration budget");

    std::vector<std::uint64_t> hits;
#ifdef _OPENMP
    if (options.parallel && total >= 512) {
#pragma omp parallel
        {
            PureActions actions(game.num_players());
            for (PlayerId p = 0; p < game.num_players(); ++p)
                actions[p].assign(game.num_cells(p), 0);
            std::vector<Rat> scratch(game.num_goods(), Rat(0));
            std::vector<std::uint64_t> local;
#pragma omp for schedule(dynamic, 128)
            for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
                decode_profile(game, static_cast<std::uint64_t>(idx), actions);
                if (is_pure_bne(game, actions, scratch)) local.push_back(idx);
            }
#pragma omp critical
            hits.insert(hits.end(), local.begin(), local.end());
        }
        std::sort(hits.begin(), hits.end());
    } else
#endif
    {
        PureActions actions(game.num_players());
        for (PlayerId p = 0; p < game.num_players(); ++p) actions[p].assign(game.num_cells(p), 0);
        std::vector<Rat> scratch(game.num_goods(), Rat(0));
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            decode_profile(game, idx, actions);
            if (is_pure_bne(game, actions, scratch)) hits.push_back(idx);
        }
    }

    std::vector<PureBne> out;
    out.reserve(hits.size());
    PureActions actions(game.num_players());
    for (PlayerId p = 0; p < game.num_players(); ++p) actions[p].assign(game.num_cells(p), 0);
    for (std::uint64_t idx : hits) {
        decode_profile(game, idx, actions);
        PureBne bne;
        bne.profile = to_profile(game, actions);
        bne.utilities = expected_utilities(game, bne.profile);
        out.push_back(std::move(bne));
    }
    // welfare descending; equal welfare keeps encoding order
    std::stable_sort(out.begin(), out.end(), [](const PureBne& a, const PureBne& b) {
        Rat wa(0), wb(0);
        for (const Rat& u : a.utilities) wa += u;
        for (const Rat& u : b.utilities) wb += u;
        return wa > wb;
    });
    return out;
}

}  // namespace coopetition
