#pragma once

#include <optional>

#include "coopetition/game.hpp"

namespace coopetition {

// Joint information cell: one partition-cell index per regular player.
struct CellKey {
    std::vector<int> cells;
    auto operator<=>(const CellKey&) const = default;
};

CellKey joint_cell(const ValidatedGame& game, TypeId t);

// One recommendation tuple (a good per regular player) with its probability.
struct RecEntry {
    std::vector<GoodId> rec;
    Rat prob;

    bool operator==(const RecEntry& other) const {
        return rec == other.rec && prob == other.prob;
    }
};

struct Transfer {
    PlayerId payer = 0;
    PlayerId payee = 0;
    Rat amount;
};

// A data-sharing scheme: an exact distribution over recommendation tuples
// for every joint information cell, plus an optional monetary transfer.
struct MediatorSpec {
    std::string label;
    std::map<CellKey, std::vector<RecEntry>> table;
    std::optional<Transfer> transfer;
};

/// Merges duplicate tuples, drops zero masses, sorts; the stored distribution
/// must sum to exactly 1.
void canonicalize(std::vector<RecEntry>& dist);

// The mediated game induced by a mediator: per-player reachable information
// sets with their probabilities, and the obedient profile that plays every
// recommendation.
struct MediatedGame {
    MediatorSpec mediator;
    StrategyProfile obedient;
    std::vector<std::map<InfoSetKey, Rat>> info_sets;  // reachable, with probability
};

/// Throws MissingCell if a positive-probability cell has no table entry.
MediatedGame induced_game(const ValidatedGame& game, const MediatorSpec& mediator);

// --- generic constructions -------------------------------------------------

/// Sends the same recommendation everywhere; conveys no information.
MediatorSpec constant_mediator(const ValidatedGame& game, GoodId g);

/// Recommends exactly the realized actions of `profile` (mixing preserved as
/// the induced joint distribution per cell).
MediatorSpec echo_mediator(const ValidatedGame& game, const StrategyProfile& profile);

/// Recommends the correct good to every regular player. Requires jointly
/// complete information.
MediatorSpec full_revelation_mediator(const ValidatedGame& game);

// --- base-value driven constructions (two regular players) -----------------

/// No outside competitor, jointly complete information. Full sharing when
/// max(v) <= 1/2; otherwise the larger-v player learns everything and the
/// other gets the correct good with the threshold probability.
MediatorSpec mediator_no_amazon(const ValidatedGame& game, const std::vector<Rat>& v);

/// Outside competitor present, jointly complete information. Full sharing
/// when max(v) <= 1/3; otherwise threshold mixture as above.
MediatorSpec mediator_amazon(const ValidatedGame& game, const std::vector<Rat>& v);

/// All segments balanced: recommends the top/second goods of the realized
/// segment, mixing who takes the top role so the larger-v player nets
/// exactly v_i.
MediatorSpec mediator_separating(const ValidatedGame& game, const std::vector<Rat>& v);

/// All segments top-heavy: pools both players on the segment's top good, or
/// mixes pooling with giving the smaller-v player her naive response.
MediatorSpec mediator_pooling(const ValidatedGame& game, const std::vector<Rat>& v);

/// General segment structure: separating construction on balanced segments,
/// pooling construction on top-heavy ones, each with class-conditional
/// aggregates.
MediatorSpec mediator_classwise(const ValidatedGame& game, const std::vector<Rat>& v);

// --- other constructions ----------------------------------------------------

/// n players, no outside competitor, jointly complete information. Plays the
/// given equilibrium except that whenever every sampled action is wrong, all
/// players are told the correct good. Throws NotABne if `equilibrium` fails
/// the equilibrium check.
MediatorSpec mediator_nplayer(const ValidatedGame& game, const StrategyProfile& equilibrium);

/// Equilibrium echo with the all-wrong event replaced by full revelation;
/// shared by mediator_nplayer and the mediated variants of the 2x2 opening
/// scenario. Does not check environment preconditions.
MediatorSpec equilibrium_revelation_mediator(const ValidatedGame& game,
                                             const StrategyProfile& equilibrium);

/// Pools on each segment's top good and moves money: the larger-v player
/// receives max(v_i - phi_top/3, 0) from the other. Requires the outside
/// competitor, every segment's top weight > 3x its second weight (jointly
/// complete information is the special case), and v_1 + v_2 <= (2/3) phi_top.
MediatorSpec transfer_mediator(const ValidatedGame& game, const std::vector<Rat>& v);

}  // namespace coopetition
