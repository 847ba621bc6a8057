#include "coopetition/game.hpp"

#include <algorithm>
#include <map>

#include "coopetition/mediators.hpp"

namespace coopetition {

const GoodDist& Strategy::at(const InfoSetKey& key) const {
    auto it = play.find(key);
    if (it == play.end()) {
        fail(Err::ProfileIncomplete, "no action at cell " + std::to_string(key.cell) +
                                         ", message " + std::to_string(key.message));
    }
    return it->second;
}

ValidatedGame validate_game(GameSpec spec) {
    const int T = spec.num_types();
    const int G = spec.num_goods();
    const int N = spec.num_players();
    require(T > 0, Err::PartitionNotCovering, "no types");
    require(G > 0, Err::UnknownGood, "no goods");
    require(N >= 2, Err::PartitionNotCovering, "need at least two regular players");
    require(static_cast<int>(spec.desired.size()) == T, Err::UnknownGood,
            "desired map must cover every type");
    require(static_cast<int>(spec.prior.size()) == T, Err::PriorNotNormalized,
            "prior must cover every type");
    require(static_cast<int>(spec.base_values.size()) == N, Err::BaseValueOutOfRange,
            "one base value per regular player");

    Rat total(0);
    for (const Rat& p : spec.prior) {
        require(p >= 0, Err::PriorNotNormalized, "negative prior mass");
        total += p;
    }
    require(total == 1, Err::PriorNotNormalized, "prior sums to " + to_string(total));

    for (TypeId t = 0; t < T; ++t) {
        require(spec.desired[t] >= 0 && spec.desired[t] < G, Err::UnknownGood,
                "desired good of type " + spec.types[t]);
    }
    for (const Rat& v : spec.base_values) {
        require(v >= 0 && v <= 1, Err::BaseValueOutOfRange, to_string(v));
    }

    ValidatedGame game;
    game.cell_of_.assign(N, std::vector<int>(T, -1));
    for (PlayerId p = 0; p < N; ++p) {
        const auto& partition = spec.partitions[p];
        for (int c = 0; c < static_cast<int>(partition.size()); ++c) {
            require(!partition[c].empty(), Err::PartitionNotCovering,
                    "player " + std::to_string(p + 1) + " has an empty cell");
            for (TypeId t : partition[c]) {
                require(t >= 0 && t < T, Err::PartitionNotCovering, "cell member out of range");
                require(game.cell_of_[p][t] == -1, Err::PartitionNotCovering,
                        "type " + spec.types[t] + " appears in two cells of player " +
                            std::to_string(p + 1));
                game.cell_of_[p][t] = c;
            }
        }
        for (TypeId t = 0; t < T; ++t) {
            require(game.cell_of_[p][t] != -1, Err::PartitionNotCovering,
                    "type " + spec.types[t] + " missing from player " + std::to_string(p + 1));
        }
    }
    game.spec_ = std::move(spec);
    return game;
}

SegmentTable build_segments(const ValidatedGame& game) {
    const int T = game.num_types();
    const int N = game.num_players();
    SegmentTable table;
    table.membership.assign(T, -1);
    std::map<std::vector<int>, int> index;  // joint cell -> segment id
    for (TypeId t = 0; t < T; ++t) {
        std::vector<int> key(N);
        for (PlayerId p = 0; p < N; ++p) key[p] = game.cell_of(p, t);
        auto [it, fresh] = index.emplace(std::move(key), static_cast<int>(table.segments.size()));
        if (fresh) table.segments.emplace_back();
        table.membership[t] = it->second;
        table.segments[it->second].push_back(t);
    }
    table.jointly_complete = std::all_of(table.segments.begin(), table.segments.end(),
                                         [](const auto& s) { return s.size() == 1; });
    return table;
}

SegmentStats segment_stats(const SegmentTable& table, const ValidatedGame& game) {
    const int S = static_cast<int>(table.segments.size());
    SegmentStats st;
    st.top_good.assign(S, -1);
    st.second_good.assign(S, -1);
    st.top_weight.assign(S, Rat(0));
    st.second_weight.assign(S, Rat(0));
    st.segment_prob.assign(S, Rat(0));
    st.seg_class.assign(S, SegmentClass::TopHeavy);
    st.phi_top = 0;
    st.phi_second = 0;
    st.class_prob_balanced = st.class_prob_top_heavy = 0;
    st.phi_top_balanced = st.phi_second_balanced = 0;
    st.phi_top_heavy = st.phi_second_heavy = 0;

    for (int s = 0; s < S; ++s) {
        std::map<GoodId, Rat> weight;  // ascending good id
        Rat prob(0);
        for (TypeId t : table.segments[s]) {
            weight[game.desired(t)] += game.prior(t);
            prob += game.prior(t);
        }
        st.segment_prob[s] = prob;

        GoodId top = -1, second = -1;
        Rat wt(0), ws(0);
        for (const auto& [g, w] : weight) {
            if (top == -1 || w > wt) {
                second = top;
                ws = wt;
                top = g;
                wt = w;
            } else if (second == -1 || w > ws) {
                second = g;
                ws = w;
            }
        }
        st.top_good[s] = top;
        if (prob > 0) {
            st.top_weight[s] = wt / prob;
            if (second != -1 && ws > 0) {
                st.second_good[s] = second;
                st.second_weight[s] = ws / prob;
            }
        } else {
            // unreachable segment; fix degenerate stats so downstream code
            // never divides by zero
            st.top_weight[s] = 1;
        }
        const bool balanced =
            st.second_weight[s] > 0 && 2 * st.top_weight[s] <= 3 * st.second_weight[s];
        st.seg_class[s] = balanced ? SegmentClass::Balanced : SegmentClass::TopHeavy;

        st.phi_top += st.top_weight[s] * prob;
        st.phi_second += st.second_weight[s] * prob;
        if (balanced) {
            st.class_prob_balanced += prob;
            st.phi_top_balanced += st.top_weight[s] * prob;
            st.phi_second_balanced += st.second_weight[s] * prob;
        } else {
            st.class_prob_top_heavy += prob;
            st.phi_top_heavy += st.top_weight[s] * prob;
            st.phi_second_heavy += st.second_weight[s] * prob;
        }
    }
    if (st.class_prob_balanced > 0) {
        st.phi_top_balanced /= st.class_prob_balanced;
        st.phi_second_balanced /= st.class_prob_balanced;
    }
    if (st.class_prob_top_heavy > 0) {
        st.phi_top_heavy /= st.class_prob_top_heavy;
        st.phi_second_heavy /= st.class_prob_top_heavy;
    }
    return st;
}

namespace {

const std::vector<RecEntry>* mediator_entries(const ValidatedGame& game,
                                              const MediatorSpec& mediator, TypeId t) {
    auto it = mediator.table.find(joint_cell(game, t));
    return it == mediator.table.end() ? nullptr : &it->second;
}

// Walks every (recommendation tuple, action tuple) outcome at type t and
// hands the per-player utility contributions to `sink(player, value)`.
template <typename Sink>
void accumulate_type(const ValidatedGame& game, const StrategyProfile& profile,
                     const std::vector<RecEntry>& entries, TypeId t, Sink&& sink) {
    const int N = game.num_players();
    const GoodId correct = game.desired(t);
    std::vector<const GoodDist*> dists(N);
    std::vector<int> pos(N, 0);
    for (const RecEntry& entry : entries) {
        if (entry.prob == 0) continue;
        for (PlayerId p = 0; p < N; ++p) {
            dists[p] = &profile.players[p].at(InfoSetKey{game.cell_of(p, t), entry.rec[p]});
        }
        // product expansion over the players' mixed actions
        std::fill(pos.begin(), pos.end(), 0);
        while (true) {
            Rat w = entry.prob;
            int offered = game.amazon() ? 1 : 0;
            for (PlayerId p = 0; p < N; ++p) {
                const auto& [g, q] = (*dists[p])[pos[p]];
                w *= q;
                if (g == correct) ++offered;
            }
            if (offered > (game.amazon() ? 1 : 0)) {
                const Rat share = w / offered;
                for (PlayerId p = 0; p < N; ++p) {
                    if ((*dists[p])[pos[p]].first == correct) sink(p, share);
                }
            }
            int p = N - 1;
            while (p >= 0 && ++pos[p] == static_cast<int>(dists[p]->size())) pos[p--] = 0;
            if (p < 0) break;
        }
    }
}

}  // namespace

std::vector<Rat> expected_utilities(const ValidatedGame& game, const StrategyProfile& profile,
                                    const MediatorSpec* mediator) {
    const int N = game.num_players();
    require(static_cast<int>(profile.players.size()) == N, Err::ProfileIncomplete,
            "profile has wrong player count");
    const std::vector<RecEntry> silent{{std::vector<GoodId>(N, kNoMessage), Rat(1)}};
    std::vector<Rat> out(N, Rat(0));
    for (TypeId t = 0; t < game.num_types(); ++t) {
        if (game.prior(t) == 0) continue;
        const std::vector<RecEntry>* entries = &silent;
        if (mediator) {
            entries = mediator_entries(game, *mediator, t);
            if (!entries) {
                fail(Err::MissingCell,
                     "no distribution for the joint cell of type " + game.spec().types[t]);
            }
        }
        const Rat& pi = game.prior(t);
        accumulate_type(game, profile, *entries, t,
                        [&](PlayerId p, const Rat& u) { out[p] += pi * u; });
    }
    return out;
}

std::vector<std::vector<Rat>> type_conditional_utilities(const ValidatedGame& game,
                                                         const StrategyProfile& profile,
                                                         const MediatorSpec* mediator) {
    const int N = game.num_players();
    require(static_cast<int>(profile.players.size()) == N, Err::ProfileIncomplete,
            "profile has wrong player count");
    const std::vector<RecEntry> silent{{std::vector<GoodId>(N, kNoMessage), Rat(1)}};
    std::vector<std::vector<Rat>> out(game.num_types(), std::vector<Rat>(N, Rat(0)));
    for (TypeId t = 0; t < game.num_types(); ++t) {
        const std::vector<RecEntry>* entries = &silent;
        if (mediator) {
            entries = mediator_entries(game, *mediator, t);
            if (!entries) {
                if (game.prior(t) == 0) continue;  // unreachable cell, leave zeros
                fail(Err::MissingCell,
                     "no distribution for the joint cell of type " + game.spec().types[t]);
            }
        }
        accumulate_type(game, profile, *entries, t,
                        [&](PlayerId p, const Rat& u) { out[t][p] += u; });
    }
    return out;
}

std::pair<GameSpec, Rat> reweight_prior(const ValidatedGame& game,
                                        const std::vector<Rat>& weight) {
    require(static_cast<int>(weight.size()) == game.num_types(), Err::PreconditionViolated,
            "one weight per type");
    Rat norm(0);
    for (TypeId t = 0; t < game.num_types(); ++t) {
        require(weight[t] >= 0, Err::PreconditionViolated, "negative type weight");
        norm += weight[t] * game.prior(t);
    }
    require(norm > 0, Err::PreconditionViolated, "all weighted mass vanished");
    GameSpec out = game.spec();
    for (TypeId t = 0; t < game.num_types(); ++t) {
        out.prior[t] = weight[t] * game.prior(t) / norm;
    }
    return {out, norm};
}

}  // namespace coopetition
