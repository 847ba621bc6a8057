#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "coopetition/errors.hpp"
#include "coopetition/rational.hpp"

namespace coopetition {

using TypeId = int;
using GoodId = int;
using PlayerId = int;  // regular players, 0-based; the complete-information
                       // outside competitor ("amazon") is implicit

// Sentinel message for information sets of the unmediated game.
inline constexpr GoodId kNoMessage = -1;

// A finite consumer-prediction game: consumer types, goods, a unique correct
// good per type, a common prior, and one information partition per regular
// player. `amazon_present` adds the fully informed outside player who always
// offers the correct good.
struct GameSpec {
    std::vector<std::string> types;
    std::vector<std::string> goods;
    std::vector<GoodId> desired;  // per type
    std::vector<Rat> prior;       // per type
    std::vector<std::vector<std::vector<TypeId>>> partitions;  // [player][cell] -> members
    bool amazon_present = false;
    std::vector<Rat> base_values;  // per regular player

    int num_players() const { return static_cast<int>(partitions.size()); }
    int num_types() const { return static_cast<int>(types.size()); }
    int num_goods() const { return static_cast<int>(goods.size()); }
};

// GameSpec whose invariants have been checked; adds the cell index of every
// type. Immutable after construction and safe to share across tasks.
class ValidatedGame {
public:
    const GameSpec& spec() const { return spec_; }
    int num_players() const { return spec_.num_players(); }
    int num_types() const { return spec_.num_types(); }
    int num_goods() const { return spec_.num_goods(); }
    bool amazon() const { return spec_.amazon_present; }
    GoodId desired(TypeId t) const { return spec_.desired[t]; }
    const Rat& prior(TypeId t) const { return spec_.prior[t]; }
    const std::vector<Rat>& base_values() const { return spec_.base_values; }

    int cell_of(PlayerId p, TypeId t) const { return cell_of_[p][t]; }
    int num_cells(PlayerId p) const { return static_cast<int>(spec_.partitions[p].size()); }
    const std::vector<TypeId>& cell_members(PlayerId p, int cell) const {
        return spec_.partitions[p][cell];
    }

private:
    friend ValidatedGame validate_game(GameSpec spec);
    GameSpec spec_;
    std::vector<std::vector<int>> cell_of_;  // [player][type]
};

/// Checks all GameSpec invariants; throws EngineError with the violated one.
ValidatedGame validate_game(GameSpec spec);

// The joint information: segment of ω is the intersection of every regular
// player's cell at ω.
struct SegmentTable {
    std::vector<std::vector<TypeId>> segments;
    std::vector<int> membership;  // type -> segment index
    bool jointly_complete = false;
};

SegmentTable build_segments(const ValidatedGame& game);

enum class SegmentClass {
    Balanced,  // top weight <= 3/2 * second weight
    TopHeavy,  // top weight  > 3/2 * second weight
};

// Per-segment top-two goods with conditional weights, plus the unconditional
// and class-conditional aggregates used by the mediator constructions.
struct SegmentStats {
    std::vector<GoodId> top_good;
    std::vector<GoodId> second_good;  // -1 when the segment holds one good
    std::vector<Rat> top_weight;      // conditional on the segment
    std::vector<Rat> second_weight;
    std::vector<Rat> segment_prob;
    std::vector<SegmentClass> seg_class;

    Rat phi_top;     // sum of top weights, weighted by segment probability
    Rat phi_second;  // same for second weights

    // Aggregates conditional on each class; zero when the class is empty.
    Rat class_prob_balanced, class_prob_top_heavy;
    Rat phi_top_balanced, phi_second_balanced;
    Rat phi_top_heavy, phi_second_heavy;

    bool has_balanced() const { return class_prob_balanced > 0; }
    bool has_top_heavy() const { return class_prob_top_heavy > 0; }
};

/// Ties in the top-two selection go to the lowest good index.
SegmentStats segment_stats(const SegmentTable& table, const ValidatedGame& game);

// Distribution over goods; positive masses summing to 1.
using GoodDist = std::vector<std::pair<GoodId, Rat>>;

inline GoodDist pure(GoodId g) { return {{g, Rat(1)}}; }

struct InfoSetKey {
    int cell = 0;
    GoodId message = kNoMessage;
    auto operator<=>(const InfoSetKey&) const = default;
};

// Behavioral strategy of one player: information set -> mixed action.
struct Strategy {
    std::map<InfoSetKey, GoodDist> play;

    void set(int cell, GoodId message, GoodDist dist) {
        play[InfoSetKey{cell, message}] = std::move(dist);
    }
    const GoodDist& at(const InfoSetKey& key) const;
};

struct StrategyProfile {
    std::vector<Strategy> players;
};

struct MediatorSpec;  // mediators.hpp

/// Exact expected utilities of the regular players under the profile, the
/// prior, the mediator's randomization (if any) and the strategy mixing. The
/// amazon, when present, always plays the correct good.
std::vector<Rat> expected_utilities(const ValidatedGame& game, const StrategyProfile& profile,
                                    const MediatorSpec* mediator = nullptr);

/// Utilities conditional on each type: [type][player], not weighted by the
/// prior. expected_utilities is the prior-weighted sum of these rows.
std::vector<std::vector<Rat>> type_conditional_utilities(const ValidatedGame& game,
                                                         const StrategyProfile& profile,
                                                         const MediatorSpec* mediator = nullptr);

/// Folds per-type profits into the prior: scales prior(t) by weight(t) and
/// renormalizes. Returns the new game and the normalization constant.
std::pair<GameSpec, Rat> reweight_prior(const ValidatedGame& game, const std::vector<Rat>& weight);

}  // namespace coopetition
