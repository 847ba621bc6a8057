#include "coopetition/scenarios.hpp"

#include <algorithm>
#include <numeric>

namespace coopetition {

namespace {

Rat total(const std::vector<Rat>& xs) {
    Rat sum(0);
    for (const Rat& x : xs) sum += x;
    return sum;
}

void add_claim(ScenarioResult& result, const std::string& id, const std::string& relation,
               const std::string& observed, bool pass) {
    result.claims.push_back({id, relation, observed, pass});
}

void finish(ScenarioResult& result) {
    result.all_pass = std::all_of(result.claims.begin(), result.claims.end(),
                                  [](const Claim& c) { return c.pass; });
}

// one action per cell, unmediated information sets
Strategy cells_strategy(const std::vector<GoodId>& actions) {
    Strategy s;
    for (int c = 0; c < static_cast<int>(actions.size()); ++c) {
        s.set(c, kNoMessage, pure(actions[c]));
    }
    return s;
}

StrategyProfile two_player_profile(const std::vector<GoodId>& p1, const std::vector<GoodId>& p2) {
    StrategyProfile profile;
    profile.players.push_back(cells_strategy(p1));
    profile.players.push_back(cells_strategy(p2));
    return profile;
}

Rat max_pure_bne_welfare(const ValidatedGame& game) {
    const auto equilibria = enumerate_pure_bne(game);
    require(!equilibria.empty(), Err::NoPureBne, "no pure equilibrium found");
    return total(equilibria.front().utilities);
}

}  // namespace

ScenarioResult intro_example(const Rat& alpha, const Rat& beta, const Rat& gamma,
                             const Rat& delta, bool amazon) {
    require(alpha + beta + gamma + delta == 1, Err::RegimeViolated,
            "cell probabilities must sum to 1");
    require(alpha > 2 * beta && beta >= gamma && 2 * gamma > 4 * delta, Err::RegimeViolated,
            "dominant-strategy regime needs alpha > 2*beta >= 2*gamma > 4*delta");

    GameSpec spec;
    spec.types = {"00", "01", "10", "11"};
    spec.goods = {"g0", "g1"};
    spec.desired = {0, 1, 1, 0};
    spec.prior = {alpha, beta, gamma, delta};
    spec.partitions = {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}};
    spec.amazon_present = amazon;
    spec.base_values = {Rat(0), Rat(0)};

    const StrategyProfile dominant = two_player_profile({0, 1}, {0, 1});

    ScenarioResult result;

    ValidatedGame probe = validate_game(spec);
    const std::vector<Rat> eq = expected_utilities(probe, dominant);
    spec.base_values = eq;
    const ValidatedGame game = validate_game(spec);
    result.games.push_back({"intro", spec});

    add_claim(result, "equilibrium_is_bne", "dominant bit strategies form an equilibrium",
              "max_gain " + to_string(check_bne(game, dominant).max_gain),
              check_bne(game, dominant).is_equilibrium);

    std::vector<Rat> formula(2);
    if (amazon) {
        formula[0] = alpha / 3 + gamma / 2;
        formula[1] = alpha / 3 + beta / 2;
    } else {
        formula[0] = alpha / 2 + gamma;
        formula[1] = alpha / 2 + beta;
    }
    add_claim(result, "equilibrium_payoffs", "payoffs match the closed form",
              to_string(eq) + " vs " + to_string(formula), eq == formula);

    // partial revelation: equilibrium actions except on the type neither
    // player serves, where both learn the correct good
    const MediatorSpec revealing = equilibrium_revelation_mediator(game, dominant);
    result.mediators.push_back({"revealing", revealing});
    const VerificationReport rev_report = verify_mediator(game, revealing, eq);
    result.reports.push_back({"revealing", rev_report});
    const Rat bonus = amazon ? delta / 3 : delta / 2;
    const std::vector<Rat> expected_rev{eq[0] + bonus, eq[1] + bonus};
    add_claim(result, "revealing_mediator_gain",
              "each player gains exactly the shared surplus of the unserved type",
              to_string(rev_report.utilities) + " vs " + to_string(expected_rev),
              rev_report.utilities == expected_rev && rev_report.certified);

    const MediatorSpec full = full_revelation_mediator(game);
    result.mediators.push_back({"full_sharing", full});
    const VerificationReport full_report = verify_mediator(game, full, eq);
    result.reports.push_back({"full_sharing", full_report});
    const Rat share = amazon ? rat(1, 3) : rat(1, 2);
    add_claim(result, "full_sharing_utilities", "full sharing splits the whole market",
              to_string(full_report.utilities),
              full_report.utilities == std::vector<Rat>{share, share});
    const bool someone_hurt = full_report.ir_slacks[0] < 0 || full_report.ir_slacks[1] < 0;
    const bool above_share = eq[0] > share || eq[1] > share;
    add_claim(result, "full_sharing_ir_sign",
              "full sharing hurts a player exactly when her payoff exceeds the equal split",
              "slacks " + to_string(full_report.ir_slacks), someone_hurt == above_share);

    if (amazon) {
        add_claim(result, "equilibrium_values_feasible",
                  "equilibrium payoffs satisfy the necessary conditions",
                  to_string(eq), feasibility(game, eq).necessary_pass);
        const MediatorSpec optimal = mediator_amazon(game, eq);
        result.mediators.push_back({"optimal", optimal});
        const VerificationReport opt_report = verify_mediator(game, optimal, eq);
        result.reports.push_back({"optimal", opt_report});
        const Rat vmax = rmax(eq[0], eq[1]);
        const Rat expected_w = rmin(rat(2, 3), 1 - vmax);
        add_claim(result, "optimal_mediator_certifies",
                  "threshold mediator is obedient, participation-safe, and welfare-tight",
                  "W " + to_string(opt_report.welfare) + " vs " + to_string(expected_w),
                  opt_report.certified && opt_report.welfare == expected_w);
        if (beta == gamma) {
            add_claim(result, "symmetric_full_sharing_optimal",
                      "with symmetric off-diagonal mass, full sharing attains the cap",
                      "W " + to_string(full_report.welfare) + ", ratio " +
                          to_string(full_report.ratio),
                      full_report.certified && full_report.welfare == rat(2, 3) &&
                          full_report.ratio == 1);
        }
    } else {
        const MediatorSpec optimal = mediator_no_amazon(game, eq);
        result.mediators.push_back({"optimal", optimal});
        const VerificationReport opt_report = verify_mediator(game, optimal, eq);
        result.reports.push_back({"optimal", opt_report});
        add_claim(result, "optimal_mediator_certifies",
                  "threshold mediator is obedient, participation-safe, and captures the market",
                  "W " + to_string(opt_report.welfare),
                  opt_report.certified && opt_report.welfare == 1);
    }
    finish(result);
    return result;
}

ScenarioResult example_ir(const Rat& eps) {
    require(eps > 0 && 3 * eps <= 1, Err::PreconditionViolated,
            "tightness family needs eps in (0, 1/3]");
    // ceil(1/eps) + 1 segments
    const mpz_class p = eps.get_num(), q = eps.get_den();
    const mpz_class denom = p + q;
    const long segments = mpz_class((q + p - 1) / p).get_si() + 1;
    Rat top{q, denom};  // conditional top weight, = 1/(1+eps)
    Rat alt{p, denom};
    top.canonicalize();
    alt.canonicalize();

    GameSpec spec;
    spec.goods.reserve(segments + 1);
    for (long s = 0; s < segments; ++s) spec.goods.push_back("top" + std::to_string(s));
    spec.goods.push_back("alt");
    const GoodId alt_good = static_cast<GoodId>(segments);
    std::vector<std::vector<TypeId>> informed_cells;
    for (long s = 0; s < segments; ++s) {
        spec.types.push_back("s" + std::to_string(s) + "_top");
        spec.types.push_back("s" + std::to_string(s) + "_alt");
        spec.desired.push_back(static_cast<GoodId>(s));
        spec.desired.push_back(alt_good);
        spec.prior.push_back(top / segments);
        spec.prior.push_back(alt / segments);
        informed_cells.push_back({static_cast<TypeId>(2 * s), static_cast<TypeId>(2 * s + 1)});
    }
    std::vector<TypeId> everything(spec.types.size());
    std::iota(everything.begin(), everything.end(), 0);
    spec.partitions = {informed_cells, {everything}};
    spec.amazon_present = true;
    const std::vector<Rat> v{top / 2, Rat(0)};
    spec.base_values = v;

    const ValidatedGame game = validate_game(spec);
    ScenarioResult result;
    result.games.push_back({"ir_tightness", spec});

    const MediatorSpec mediator = mediator_pooling(game, v);
    result.mediators.push_back({"pooling", mediator});
    const VerificationReport report = verify_mediator(game, mediator, v);
    result.reports.push_back({"pooling", report});

    add_claim(result, "pooling_certified", "construction is obedient and participation-safe",
              "ic " + std::string(report.ic.is_equilibrium ? "yes" : "no"), report.certified);
    const Rat separating_welfare = (1 + eps) * top / 2;
    add_claim(result, "welfare_is_separating_value",
              "welfare equals the separated top/second split",
              to_string(report.welfare) + " vs " + to_string(separating_welfare),
              report.welfare == separating_welfare);
    const Rat pooled_opt = 2 * top / 3;
    add_claim(result, "opt_is_pooling_value", "unconstrained optimum pools every segment",
              to_string(report.opt) + " vs " + to_string(pooled_opt), report.opt == pooled_opt);
    const Rat expected_ratio = (1 + eps) * 3 / 4;
    add_claim(result, "ratio_formula", "participation cap costs exactly a (1+eps)*3/4 factor",
              to_string(report.ratio) + " vs " + to_string(expected_ratio),
              report.ratio == expected_ratio);
    finish(result);
    return result;
}

ScenarioResult example_ic(const Rat& eps) {
    require(eps > 0, Err::PreconditionViolated, "eps must be positive");
    const Rat second = Rat(2) / (5 + 2 * eps);
    const Rat top = 1 - second;  // = (3/2 + eps) * second

    GameSpec spec;
    spec.types = {"s0_top", "s0_alt", "s1_top", "s1_alt"};
    spec.goods = {"a0", "b0", "a1", "b1"};
    spec.desired = {0, 1, 2, 3};
    spec.prior = {top / 2, second / 2, top / 2, second / 2};
    spec.partitions = {{{0, 1}, {2, 3}}, {{0, 1}, {2, 3}}};
    spec.amazon_present = true;
    spec.base_values = {Rat(0), Rat(0)};

    const ValidatedGame game = validate_game(spec);
    ScenarioResult result;
    result.games.push_back({"ic_tightness", spec});

    // exhaust deterministic recommendation tables; keep the best obedient one
    const auto cells = std::vector<CellKey>{joint_cell(game, 0), joint_cell(game, 2)};
    Rat best_welfare(-1);
    MediatorSpec best;
    int obedient_count = 0;
    const int G = game.num_goods();
    for (int c0 = 0; c0 < G * G; ++c0) {
        for (int c1 = 0; c1 < G * G; ++c1) {
            MediatorSpec candidate;
            candidate.label = "table";
            candidate.table[cells[0]] = {{{c0 / G, c0 % G}, Rat(1)}};
            candidate.table[cells[1]] = {{{c1 / G, c1 % G}, Rat(1)}};
            const MediatedGame induced = induced_game(game, candidate);
            if (!check_bne(game, induced.obedient, &candidate).is_equilibrium) continue;
            ++obedient_count;
            const Rat welfare = total(expected_utilities(game, induced.obedient, &candidate));
            if (welfare > best_welfare) {
                best_welfare = welfare;
                best = candidate;
            }
        }
    }
    best.label = "best_obedient";
    result.mediators.push_back({"best_obedient", best});
    const VerificationReport report = verify_mediator(game, best, spec.base_values);
    result.reports.push_back({"best_obedient", report});

    add_claim(result, "some_table_obedient", "at least one deterministic table is obedient",
              std::to_string(obedient_count) + " tables", obedient_count > 0);
    const Rat pooled = 2 * top / 3;
    add_claim(result, "best_obedient_welfare", "obedience caps welfare at pooling the top good",
              to_string(best_welfare) + " vs " + to_string(pooled), best_welfare == pooled);
    const Rat opt = (top + second) / 2;
    add_claim(result, "opt_is_separating_value", "unconstrained optimum separates every segment",
              to_string(report.opt) + " vs " + to_string(opt), report.opt == opt);
    const Rat expected_ratio = (Rat(2) + 4 * eps / 3) / (Rat(5) / 2 + eps);
    add_claim(result, "ratio_formula", "obedience costs exactly a (2+4eps/3)/(5/2+eps) factor",
              to_string(report.ratio) + " vs " + to_string(expected_ratio),
              report.ratio == expected_ratio);
    finish(result);
    return result;
}

namespace {

GameSpec with_amazon_flag(GameSpec spec, bool amazon) {
    spec.amazon_present = amazon;
    return spec;
}

GameSpec pooled_information(const GameSpec& spec) {
    const ValidatedGame game = validate_game(spec);
    const SegmentTable segs = build_segments(game);
    GameSpec pooled = spec;
    pooled.partitions.assign(spec.partitions.size(), segs.segments);
    return pooled;
}

struct ProfileEval {
    bool is_bne = false;
    std::vector<Rat> utilities;
    Rat welfare;
};

ProfileEval eval_profile(const GameSpec& spec, const StrategyProfile& profile) {
    const ValidatedGame game = validate_game(spec);
    ProfileEval out;
    out.is_bne = check_bne(game, profile).is_equilibrium;
    out.utilities = expected_utilities(game, profile);
    out.welfare = total(out.utilities);
    return out;
}

}  // namespace

ScenarioResult sharing_comparison(SharingSetting which) {
    ScenarioResult result;

    if (which == SharingSetting::MoreSharingWithCompetitor) {
        // one informed player; the uncertain segment strongly favors its top
        // good (conditional weights 4/5 vs 1/5)
        GameSpec base;
        base.types = {"t1", "t2", "t3"};
        base.goods = {"g1", "g2"};
        base.desired = {0, 0, 1};
        base.prior = {rat(1, 2), rat(1, 10), rat(2, 5)};
        base.partitions = {{{0}, {1, 2}}, {{0, 1, 2}}};
        base.base_values = {Rat(0), Rat(0)};
        result.games.push_back({"base", base});

        const GameSpec pooled = pooled_information(base);
        const Rat none_with = max_pure_bne_welfare(validate_game(with_amazon_flag(base, true)));
        const Rat full_with = max_pure_bne_welfare(validate_game(with_amazon_flag(pooled, true)));
        const Rat none_without = max_pure_bne_welfare(validate_game(with_amazon_flag(base, false)));
        const Rat full_without =
            max_pure_bne_welfare(validate_game(with_amazon_flag(pooled, false)));

        add_claim(result, "competitor_full_beats_none",
                  "with the competitor, full sharing beats no sharing",
                  to_string(full_with) + " > " + to_string(none_with), full_with > none_with);
        add_claim(result, "alone_none_beats_full",
                  "without the competitor, no sharing beats full sharing",
                  to_string(none_without) + " > " + to_string(full_without),
                  none_without > full_without);

        // symmetric duplication: same construction twice with roles swapped
        GameSpec dup;
        dup.types = {"t1", "t2", "t3", "u1", "u2", "u3"};
        dup.goods = {"g1", "g2", "h1", "h2"};
        dup.desired = {0, 0, 1, 2, 2, 3};
        dup.prior = {rat(1, 4), rat(1, 20), rat(1, 5), rat(1, 4), rat(1, 20), rat(1, 5)};
        dup.partitions = {{{0}, {1, 2}, {3, 4, 5}}, {{0, 1, 2}, {3}, {4, 5}}};
        dup.base_values = {Rat(0), Rat(0)};
        result.games.push_back({"duplicated", dup});

        const StrategyProfile dup_none = two_player_profile({0, 1, 2}, {0, 2, 3});
        const GameSpec dup_pooled = pooled_information(dup);
        const StrategyProfile dup_full =
            two_player_profile({0, 1, 2, 3}, {0, 1, 2, 3});

        for (bool amazon : {true, false}) {
            const std::string env = amazon ? "competitor" : "alone";
            const ProfileEval none = eval_profile(with_amazon_flag(dup, amazon), dup_none);
            const ProfileEval full = eval_profile(with_amazon_flag(dup_pooled, amazon), dup_full);
            add_claim(result, "dup_profiles_equilibria_" + env,
                      "constructed no-sharing/full-sharing profiles are equilibria",
                      "", none.is_bne && full.is_bne);
            add_claim(result, "dup_utilities_equal_" + env,
                      "symmetry makes both players' utilities equal",
                      to_string(none.utilities) + " / " + to_string(full.utilities),
                      none.utilities[0] == none.utilities[1] &&
                          full.utilities[0] == full.utilities[1]);
            const bool expected_order =
                amazon ? full.welfare > none.welfare : none.welfare > full.welfare;
            add_claim(result, "dup_ordering_" + env, "duplicated game keeps the welfare ordering",
                      to_string(full.welfare) + " vs " + to_string(none.welfare), expected_order);
        }
        finish(result);
        return result;
    }

    // full sharing optimal only without the competitor: three segments, the
    // mixed one with conditional weights (1/2, 3/10, 1/5)
    const Rat phi1 = rat(1, 2), phi2 = rat(3, 10), phi3 = rat(1, 5);
    require(2 * phi1 > 3 * phi2 && phi1 < 2 * phi2 && phi2 > phi3 && 3 * phi3 > phi1,
            Err::PreconditionViolated, "mixed-segment weights left their region");

    GameSpec base;
    base.types = {"s1", "s2", "m1", "m2", "m3"};
    base.goods = {"g1", "g2", "g3"};
    base.desired = {0, 2, 0, 1, 2};
    base.prior = {rat(1, 3), rat(1, 3), phi1 / 3, phi2 / 3, phi3 / 3};
    base.partitions = {{{0}, {1, 2, 3, 4}}, {{1}, {0, 2, 3, 4}}};
    base.base_values = {Rat(0), Rat(0)};
    result.games.push_back({"base", base});

    const GameSpec pooled = pooled_information(base);
    const Rat none_with = max_pure_bne_welfare(validate_game(with_amazon_flag(base, true)));
    const Rat full_with = max_pure_bne_welfare(validate_game(with_amazon_flag(pooled, true)));
    const Rat none_without = max_pure_bne_welfare(validate_game(with_amazon_flag(base, false)));
    const Rat full_without = max_pure_bne_welfare(validate_game(with_amazon_flag(pooled, false)));

    add_claim(result, "alone_full_beats_none",
              "without the competitor, full sharing beats no sharing",
              to_string(full_without) + " > " + to_string(none_without),
              full_without > none_without);
    add_claim(result, "competitor_none_beats_full",
              "with the competitor, no sharing beats full sharing",
              to_string(none_with) + " > " + to_string(full_with), none_with > full_with);
    const Rat full_without_formula = (2 + phi1 + phi2) / 3;
    add_claim(result, "alone_full_sharing_value", "full sharing separates the mixed segment",
              to_string(full_without) + " vs " + to_string(full_without_formula),
              full_without == full_without_formula);
    const Rat none_with_formula = (Rat(4) / 3 + (phi1 + phi3) / 2) / 3;
    add_claim(result, "competitor_no_sharing_value",
              "no sharing separates the mixed segment against the competitor",
              to_string(none_with) + " vs " + to_string(none_with_formula),
              none_with == none_with_formula);
    add_claim(result, "competitor_separation_beats_pooling",
              "conditional welfare of separation exceeds pooling on the mixed segment",
              to_string((phi1 + phi3) / 2) + " > " + to_string(2 * phi1 / 3),
              (phi1 + phi3) / 2 > 2 * phi1 / 3);

    GameSpec dup;
    dup.types = {"s1", "s2", "m1", "m2", "m3", "r1", "r2", "n1", "n2", "n3"};
    dup.goods = {"a1", "a2", "a3", "b1", "b2", "b3"};
    dup.desired = {0, 2, 0, 1, 2, 3, 5, 3, 4, 5};
    dup.prior = {rat(1, 6), rat(1, 6), phi1 / 6, phi2 / 6, phi3 / 6,
                 rat(1, 6), rat(1, 6), phi1 / 6, phi2 / 6, phi3 / 6};
    dup.partitions = {{{0}, {1, 2, 3, 4}, {6}, {5, 7, 8, 9}},
                      {{1}, {0, 2, 3, 4}, {5}, {6, 7, 8, 9}}};
    dup.base_values = {Rat(0), Rat(0)};
    result.games.push_back({"duplicated", dup});

    const StrategyProfile dup_none = two_player_profile({0, 2, 5, 3}, {2, 0, 3, 5});
    const GameSpec dup_pooled = pooled_information(dup);
    // pooled cells: s1, s2, mixed, r1, r2, mixed-bar
    const StrategyProfile dup_full_alone =
        two_player_profile({0, 2, 0, 3, 5, 4}, {0, 2, 1, 3, 5, 3});
    const StrategyProfile dup_full_with =
        two_player_profile({0, 2, 0, 3, 5, 3}, {0, 2, 0, 3, 5, 3});

    for (bool amazon : {true, false}) {
        const std::string env = amazon ? "competitor" : "alone";
        const ProfileEval none = eval_profile(with_amazon_flag(dup, amazon), dup_none);
        const ProfileEval full = eval_profile(with_amazon_flag(dup_pooled, amazon),
                                              amazon ? dup_full_with : dup_full_alone);
        add_claim(result, "dup_profiles_equilibria_" + env,
                  "constructed no-sharing/full-sharing profiles are equilibria", "",
                  none.is_bne && full.is_bne);
        add_claim(result, "dup_utilities_equal_" + env,
                  "symmetry makes both players' utilities equal",
                  to_string(none.utilities) + " / " + to_string(full.utilities),
                  none.utilities[0] == none.utilities[1] &&
                      full.utilities[0] == full.utilities[1]);
        const bool expected_order =
            amazon ? none.welfare > full.welfare : full.welfare > none.welfare;
        add_claim(result, "dup_ordering_" + env, "duplicated game keeps the welfare ordering",
                  to_string(full.welfare) + " vs " + to_string(none.welfare), expected_order);
    }
    finish(result);
    return result;
}

ScenarioResult nplayer_claim(int n, const std::vector<Rat>& v) {
    require(n >= 2, Err::PreconditionViolated, "need at least two regular players");
    require(static_cast<int>(v.size()) == n, Err::PreconditionViolated,
            "one base value per player");

    const int bits = std::min(n, 3);
    const int T = 1 << bits;
    GameSpec spec;
    spec.goods = {"g0", "g1"};
    for (int t = 0; t < T; ++t) {
        std::string name;
        for (int b = bits - 1; b >= 0; --b) name += ((t >> b) & 1) ? '1' : '0';
        spec.types.push_back(name);
        spec.desired.push_back(__builtin_popcount(static_cast<unsigned>(t)) % 2);
        spec.prior.push_back(rat(1, T));
    }
    for (int p = 0; p < n; ++p) {
        if (p < bits) {
            std::vector<TypeId> zero, one;
            for (int t = 0; t < T; ++t) (((t >> p) & 1) ? one : zero).push_back(t);
            spec.partitions.push_back({zero, one});
        } else {
            std::vector<TypeId> everything(T);
            std::iota(everything.begin(), everything.end(), 0);
            spec.partitions.push_back({everything});
        }
    }
    spec.amazon_present = true;
    spec.base_values = v;
    const ValidatedGame game = validate_game(spec);

    ScenarioResult result;
    result.games.push_back({"parity", spec});

    const MediatorSpec full = full_revelation_mediator(game);
    result.mediators.push_back({"full_revelation", full});
    const VerificationReport report = verify_mediator(game, full, v);
    result.reports.push_back({"full_revelation", report});

    const Rat bound = rat(1, n + 1);
    const Rat expected_w = Rat(n) / (n + 1);
    add_claim(result, "welfare_is_equal_split", "everyone offers the correct good",
              to_string(report.welfare) + " vs " + to_string(expected_w),
              report.welfare == expected_w);
    add_claim(result, "obedient", "full revelation is dominant-obedient",
              "max_gain " + to_string(report.ic.max_gain), report.ic.is_equilibrium);
    add_claim(result, "welfare_is_optimal", "no mediator does better",
              to_string(report.ratio), report.ratio == 1);
    const bool within = std::all_of(v.begin(), v.end(), [&](const Rat& x) { return x <= bound; });
    add_claim(result, "certified_iff_within_bound",
              "certification happens exactly when every base value fits the equal split",
              "bound " + to_string(bound), report.certified == within);

    if (n == 2) {
        const Rat vmax = rmax(v[0], v[1]);
        if (3 * vmax <= 1 && feasibility(game, v).necessary_pass) {
            const MediatorSpec two = mediator_amazon(game, v);
            add_claim(result, "matches_two_player_construction",
                      "reduces to the two-player full-sharing branch", "",
                      two.table == full.table);
        }
    }
    finish(result);
    return result;
}

// ---------------------------------------------------------------------------
// seeded instance generation

namespace {

std::vector<Rat> normalized_weights(Rng& rng, int count) {
    std::vector<long> w(count);
    long sum = 0;
    for (long& x : w) {
        x = rng.range(1, 9);
        sum += x;
    }
    std::vector<Rat> out;
    out.reserve(count);
    for (long x : w) out.push_back(rat(x, sum));
    return out;
}

template <typename T>
void shuffle(Rng& rng, std::vector<T>& xs) {
    for (size_t k = xs.size(); k > 1; --k) {
        std::swap(xs[k - 1], xs[rng.below(k)]);
    }
}

// scaled draw in [0, cap]; granularity keeps denominators small
Rat draw_up_to(Rng& rng, const Rat& cap) { return cap * rat(rng.range(0, 12), 12); }

// strictly below cap unless cap is 0
Rat draw_strictly_below(Rng& rng, const Rat& cap) { return cap * rat(rng.range(0, 12), 13); }

GameSpec random_jci_game(Rng& rng, bool amazon) {
    const int T = static_cast<int>(rng.range(3, 6));
    const int G = static_cast<int>(rng.range(2, 4));
    GameSpec spec;
    for (int t = 0; t < T; ++t) spec.types.push_back("t" + std::to_string(t));
    for (int g = 0; g < G; ++g) spec.goods.push_back("g" + std::to_string(g));
    for (int t = 0; t < T; ++t) spec.desired.push_back(static_cast<GoodId>(rng.below(G)));
    spec.prior = normalized_weights(rng, T);
    spec.amazon_present = amazon;
    spec.base_values = {Rat(0), Rat(0)};

    // player 1: random blocks; player 2: a transversal of every block, so the
    // joint information always pins down the type
    const int blocks = static_cast<int>(rng.range(1, T));
    std::vector<std::vector<TypeId>> first(blocks);
    std::vector<TypeId> order(T);
    std::iota(order.begin(), order.end(), 0);
    shuffle(rng, order);
    for (int k = 0; k < T; ++k) {
        first[k < blocks ? k : static_cast<int>(rng.below(blocks))].push_back(order[k]);
    }
    int widest = 0;
    for (auto& cell : first) {
        std::sort(cell.begin(), cell.end());
        widest = std::max(widest, static_cast<int>(cell.size()));
    }
    std::vector<std::vector<TypeId>> second(widest);
    for (auto& cell : first) {
        std::vector<int> labels(cell.size());
        std::iota(labels.begin(), labels.end(), 0);
        shuffle(rng, labels);
        for (size_t k = 0; k < cell.size(); ++k) second[labels[k]].push_back(cell[k]);
    }
    for (auto& cell : second) std::sort(cell.begin(), cell.end());
    spec.partitions = {std::move(first), std::move(second)};
    return spec;
}

// conditional (top, second) menus; denominators stay small
const std::vector<std::pair<long, long>> kBalancedTops = {{1, 2}, {11, 20}, {6, 11}, {4, 7}};
const std::vector<std::pair<long, long>> kTopHeavyTops = {{4, 5}, {7, 10}, {2, 3}, {5, 8}};

GameSpec random_segmented_game(Rng& rng, int balanced_segments, int top_heavy_segments) {
    const int S = balanced_segments + top_heavy_segments;
    std::vector<bool> balanced(S, false);
    std::fill(balanced.begin(), balanced.begin() + balanced_segments, true);
    shuffle(rng, balanced);

    const bool shared_second = rng.coin();
    const std::vector<Rat> seg_prob = normalized_weights(rng, S);

    GameSpec spec;
    spec.amazon_present = true;
    spec.base_values = {Rat(0), Rat(0)};
    if (shared_second) spec.goods.push_back("alt");
    std::vector<std::vector<TypeId>> seg_cells;
    for (int s = 0; s < S; ++s) {
        const bool singleton = !balanced[s] && rng.below(3) == 0;
        const GoodId top_good = static_cast<GoodId>(spec.goods.size());
        spec.goods.push_back("g" + std::to_string(s) + "t");
        std::vector<TypeId> cell;
        if (singleton) {
            cell.push_back(static_cast<TypeId>(spec.types.size()));
            spec.types.push_back("s" + std::to_string(s) + "a");
            spec.desired.push_back(top_good);
            spec.prior.push_back(seg_prob[s]);
        } else {
            const auto [num, den] =
                balanced[s] ? rng.pick(kBalancedTops) : rng.pick(kTopHeavyTops);
            const Rat top = rat(num, den);
            GoodId second_good;
            if (shared_second) {
                second_good = 0;
            } else {
                second_good = static_cast<GoodId>(spec.goods.size());
                spec.goods.push_back("g" + std::to_string(s) + "s");
            }
            cell.push_back(static_cast<TypeId>(spec.types.size()));
            spec.types.push_back("s" + std::to_string(s) + "a");
            spec.desired.push_back(top_good);
            spec.prior.push_back(seg_prob[s] * top);
            cell.push_back(static_cast<TypeId>(spec.types.size()));
            spec.types.push_back("s" + std::to_string(s) + "b");
            spec.desired.push_back(second_good);
            spec.prior.push_back(seg_prob[s] * (1 - top));
        }
        seg_cells.push_back(std::move(cell));
    }

    // one player knows the segment; the other a random coarsening
    std::vector<int> order(S);
    std::iota(order.begin(), order.end(), 0);
    shuffle(rng, order);
    const int coarse_cells = static_cast<int>(rng.range(1, S));
    std::vector<std::vector<TypeId>> coarse(coarse_cells);
    for (int k = 0; k < S; ++k) {
        auto& cell = coarse[k < coarse_cells ? k : static_cast<int>(rng.below(coarse_cells))];
        cell.insert(cell.end(), seg_cells[order[k]].begin(), seg_cells[order[k]].end());
    }
    for (auto& cell : coarse) std::sort(cell.begin(), cell.end());
    if (rng.coin()) {
        spec.partitions = {seg_cells, coarse};
    } else {
        spec.partitions = {coarse, seg_cells};
    }
    return spec;
}

}  // namespace

RandomInstance random_instance(std::uint64_t seed, InstanceProfile profile, int nplayers) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(profile) + 1);
    RandomInstance out;

    switch (profile) {
        case InstanceProfile::JciNoAmazon:
        case InstanceProfile::JciAmazon: {
            const bool amazon = profile == InstanceProfile::JciAmazon;
            out.game = random_jci_game(rng, amazon);
            const ValidatedGame game = validate_game(out.game);
            const PlayerId i = static_cast<PlayerId>(rng.below(2));
            const NaiveBestResponse naive = naive_best_response(game, i, NaiveVariant::Jci);
            std::vector<Rat> v(2, Rat(0));
            v[i] = draw_up_to(rng, naive.alpha_informed);
            const Rat cap = amazon ? rmin(v[i], 1 - 2 * v[i]) : rmin(v[i], 1 - v[i]);
            v[1 - i] = draw_strictly_below(rng, cap);
            out.v = v;
            break;
        }
        case InstanceProfile::TransferJciAmazon: {
            out.game = random_jci_game(rng, true);
            const PlayerId i = static_cast<PlayerId>(rng.below(2));
            std::vector<Rat> v(2, Rat(0));
            v[i] = rat(1, 3) + rat(1, 3) * rat(rng.range(1, 12), 13);
            v[1 - i] = draw_strictly_below(rng, rmin(v[i], rat(2, 3) - v[i]));
            out.v = v;
            break;
        }
        case InstanceProfile::NoJciBalanced:
        case InstanceProfile::NoJciTopHeavy:
        case InstanceProfile::NoJciMixed: {
            int balanced = 0, top_heavy = 0;
            if (profile == InstanceProfile::NoJciBalanced) {
                balanced = static_cast<int>(rng.range(2, 4));
            } else if (profile == InstanceProfile::NoJciTopHeavy) {
                top_heavy = static_cast<int>(rng.range(2, 4));
            } else {
                balanced = static_cast<int>(rng.range(1, 2));
                top_heavy = static_cast<int>(rng.range(1, 2));
            }
            out.game = random_segmented_game(rng, balanced, top_heavy);
            const ValidatedGame game = validate_game(out.game);
            const SegmentStats st = segment_stats(build_segments(game), game);
            const PlayerId i = static_cast<PlayerId>(rng.below(2));
            std::vector<Rat> v(2, Rat(0));
            if (profile == InstanceProfile::NoJciBalanced) {
                v[i] = draw_up_to(rng, st.phi_top / 2);
                const Rat cap = rmin(v[i], (st.phi_top + st.phi_second) / 2 - v[i]);
                v[1 - i] = draw_strictly_below(rng, cap);
            } else if (profile == InstanceProfile::NoJciTopHeavy) {
                const NaiveBestResponse naive = naive_best_response(game, i, NaiveVariant::NoJci);
                v[i] = draw_up_to(rng, naive.alpha_informed);
                const Rat cap = rmin(v[i], st.phi_top / 2 - v[i]);
                v[1 - i] = draw_strictly_below(rng, cap);
            } else {
                const NaiveBestResponse naive =
                    naive_best_response(game, i, NaiveVariant::NoJciTopHeavy);
                Rat bound = rmin(naive.alpha_informed, st.phi_top_balanced / 2);
                bound = rmin(bound, st.phi_top_heavy / 2);
                v[i] = draw_up_to(rng, bound);
                Rat cap = rmin(v[i], st.phi_top_heavy / 2 - v[i]);
                cap = rmin(cap, (st.phi_top_balanced + st.phi_second_balanced) / 2 - v[i]);
                v[1 - i] = draw_strictly_below(rng, cap);
            }
            out.v = v;
            break;
        }
        case InstanceProfile::NPlayerJci: {
            require(nplayers >= 2, Err::PreconditionViolated, "need at least two players");
            for (int attempt = 0; attempt < 20; ++attempt) {
                const int bits = static_cast<int>(rng.range(2, std::min(nplayers, 3)));
                const int T = 1 << bits;
                const int G = static_cast<int>(rng.range(2, 3));
                GameSpec spec;
                for (int t = 0; t < T; ++t) spec.types.push_back("t" + std::to_string(t));
                for (int g = 0; g < G; ++g) spec.goods.push_back("g" + std::to_string(g));
                for (int t = 0; t < T; ++t)
                    spec.desired.push_back(static_cast<GoodId>(rng.below(G)));
                spec.prior = normalized_weights(rng, T);
                std::vector<int> roles(nplayers);
                std::iota(roles.begin(), roles.end(), 0);
                shuffle(rng, roles);
                spec.partitions.resize(nplayers);
                for (int p = 0; p < nplayers; ++p) {
                    if (roles[p] < bits) {
                        std::vector<TypeId> zero, one;
                        for (int t = 0; t < T; ++t)
                            (((t >> roles[p]) & 1) ? one : zero).push_back(t);
                        spec.partitions[p] = {zero, one};
                    } else {
                        std::vector<TypeId> everything(T);
                        std::iota(everything.begin(), everything.end(), 0);
                        spec.partitions[p] = {everything};
                    }
                }
                spec.amazon_present = false;
                spec.base_values.assign(nplayers, Rat(0));
                const ValidatedGame game = validate_game(spec);
                const auto equilibria = enumerate_pure_bne(game);
                if (equilibria.empty()) continue;
                out.game = spec;
                out.game.base_values = equilibria.front().utilities;
                out.v = equilibria.front().utilities;
                return out;
            }
            // fallback: everyone fully informed, so truthful play is an equilibrium
            const int T = static_cast<int>(rng.range(2, 4));
            GameSpec spec;
            for (int t = 0; t < T; ++t) {
                spec.types.push_back("t" + std::to_string(t));
                spec.goods.push_back("g" + std::to_string(t));
                spec.desired.push_back(t);
            }
            spec.prior = normalized_weights(rng, T);
            std::vector<std::vector<TypeId>> singletons;
            for (int t = 0; t < T; ++t) singletons.push_back({t});
            spec.partitions.assign(nplayers, singletons);
            spec.amazon_present = false;
            spec.base_values.assign(nplayers, rat(1, nplayers));
            out.game = spec;
            out.v = spec.base_values;
            return out;
        }
    }
    out.game.base_values = out.v;
    return out;
}

InstanceProfile parse_instance_profile(const std::string& name) {
    if (name == "jci_noA") return InstanceProfile::JciNoAmazon;
    if (name == "jci_A") return InstanceProfile::JciAmazon;
    if (name == "nojci_S1") return InstanceProfile::NoJciBalanced;
    if (name == "nojci_S2") return InstanceProfile::NoJciTopHeavy;
    if (name == "nojci_mixed") return InstanceProfile::NoJciMixed;
    if (name == "nplayer") return InstanceProfile::NPlayerJci;
    if (name == "transfer") return InstanceProfile::TransferJciAmazon;
    fail(Err::ParseError, "unknown instance profile: " + name);
}

std::string instance_profile_name(InstanceProfile profile) {
    switch (profile) {
        case InstanceProfile::JciNoAmazon: return "jci_noA";
        case InstanceProfile::JciAmazon: return "jci_A";
        case InstanceProfile::NoJciBalanced: return "nojci_S1";
        case InstanceProfile::NoJciTopHeavy: return "nojci_S2";
        case InstanceProfile::NoJciMixed: return "nojci_mixed";
        case InstanceProfile::NPlayerJci: return "nplayer";
        case InstanceProfile::TransferJciAmazon: return "transfer";
    }
    return "unknown";
}

}  // namespace coopetition
