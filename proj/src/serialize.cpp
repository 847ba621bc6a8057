#include "coopetition/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace coopetition {

namespace {

Rat rat_from(const Json& j) {
    require(j.is_string(), Err::ParseError, "rational must be a \"p/q\" string");
    return parse_rational(j.get<std::string>());
}

std::vector<Rat> rats_from(const Json& j) {
    require(j.is_array(), Err::ParseError, "expected an array of rationals");
    std::vector<Rat> out;
    for (const Json& x : j) out.push_back(rat_from(x));
    return out;
}

Json rats_to(const std::vector<Rat>& rs) {
    Json out = Json::array();
    for (const Rat& r : rs) out.push_back(to_string(r));
    return out;
}

const Json& field(const Json& j, const char* name) {
    require(j.is_object() && j.contains(name), Err::ParseError,
            std::string("missing field '") + name + "'");
    return j.at(name);
}

// index of every (player, sorted cell members) pair, for mediator parsing
std::map<std::vector<std::string>, int> cell_index(const ValidatedGame& game, PlayerId p) {
    std::map<std::vector<std::string>, int> out;
    for (int c = 0; c < game.num_cells(p); ++c) {
        std::vector<std::string> names;
        for (TypeId t : game.cell_members(p, c)) names.push_back(game.spec().types[t]);
        std::sort(names.begin(), names.end());
        out[names] = c;
    }
    return out;
}

}  // namespace

Json game_to_json(const GameSpec& game) {
    Json j;
    j["types"] = game.types;
    j["goods"] = game.goods;
    Json desired = Json::object();
    for (int t = 0; t < game.num_types(); ++t) {
        desired[game.types[t]] = game.goods[game.desired[t]];
    }
    j["desired"] = desired;
    Json prior = Json::object();
    for (int t = 0; t < game.num_types(); ++t) prior[game.types[t]] = to_string(game.prior[t]);
    j["prior"] = prior;
    Json partitions = Json::array();
    for (const auto& partition : game.partitions) {
        Json cells = Json::array();
        for (const auto& cell : partition) {
            Json members = Json::array();
            for (TypeId t : cell) members.push_back(game.types[t]);
            cells.push_back(members);
        }
        partitions.push_back(cells);
    }
    j["partitions"] = partitions;
    j["amazon"] = game.amazon_present;
    j["base_values"] = rats_to(game.base_values);
    return j;
}

GameSpec game_from_json(const Json& j) {
    GameSpec game;
    for (const Json& t : field(j, "types")) {
        require(t.is_string(), Err::ParseError, "type names must be strings");
        game.types.push_back(t.get<std::string>());
    }
    for (const Json& g : field(j, "goods")) {
        require(g.is_string(), Err::ParseError, "good names must be strings");
        game.goods.push_back(g.get<std::string>());
    }
    std::map<std::string, int> type_id, good_id;
    for (int t = 0; t < game.num_types(); ++t) {
        require(type_id.emplace(game.types[t], t).second, Err::ParseError,
                "duplicate type name " + game.types[t]);
    }
    for (int g = 0; g < game.num_goods(); ++g) {
        require(good_id.emplace(game.goods[g], g).second, Err::ParseError,
                "duplicate good name " + game.goods[g]);
    }
    auto lookup = [](const std::map<std::string, int>& ids, const std::string& name,
                     const char* kind) {
        auto it = ids.find(name);
        require(it != ids.end(), Err::ParseError, std::string("unknown ") + kind + " " + name);
        return it->second;
    };
    const Json& desired = field(j, "desired");
    const Json& prior = field(j, "prior");
    for (int t = 0; t < game.num_types(); ++t) {
        const std::string& name = game.types[t];
        require(desired.contains(name), Err::ParseError, "desired good missing for " + name);
        require(desired.at(name).is_string(), Err::ParseError, "desired goods must be names");
        game.desired.push_back(lookup(good_id, desired.at(name).get<std::string>(), "good"));
        require(prior.contains(name), Err::ParseError, "prior missing for " + name);
        game.prior.push_back(rat_from(prior.at(name)));
    }
    for (const Json& partition : field(j, "partitions")) {
        std::vector<std::vector<TypeId>> cells;
        require(partition.is_array(), Err::ParseError, "partition must be an array of cells");
        for (const Json& cell : partition) {
            std::vector<TypeId> members;
            for (const Json& name : cell) {
                require(name.is_string(), Err::ParseError, "cell members must be type names");
                members.push_back(lookup(type_id, name.get<std::string>(), "type"));
            }
            cells.push_back(std::move(members));
        }
        game.partitions.push_back(std::move(cells));
    }
    const Json& amazon = field(j, "amazon");
    require(amazon.is_boolean(), Err::ParseError, "'amazon' must be a boolean");
    game.amazon_present = amazon.get<bool>();
    game.base_values = rats_from(field(j, "base_values"));
    return game;
}

Json mediator_to_json(const MediatorSpec& mediator, const ValidatedGame& game) {
    Json j;
    j["label"] = mediator.label;
    if (mediator.transfer) {
        Json tr;
        tr["payer"] = mediator.transfer->payer + 1;
        tr["payee"] = mediator.transfer->payee + 1;
        tr["amount"] = to_string(mediator.transfer->amount);
        j["transfer"] = tr;
    } else {
        j["transfer"] = nullptr;
    }
    Json table = Json::array();
    for (const auto& [key, dist] : mediator.table) {
        Json entry;
        Json cells = Json::array();
        for (PlayerId p = 0; p < game.num_players(); ++p) {
            Json members = Json::array();
            for (TypeId t : game.cell_members(p, key.cells[p])) {
                members.push_back(game.spec().types[t]);
            }
            cells.push_back(members);
        }
        entry["cell"] = cells;
        Json rows = Json::array();
        for (const RecEntry& rec : dist) {
            Json row;
            Json goods = Json::array();
            for (GoodId g : rec.rec) goods.push_back(game.spec().goods[g]);
            row["rec"] = goods;
            row["p"] = to_string(rec.prob);
            rows.push_back(row);
        }
        entry["dist"] = rows;
        table.push_back(entry);
    }
    j["table"] = table;
    return j;
}

MediatorSpec mediator_from_json(const Json& j, const ValidatedGame& game) {
    MediatorSpec mediator;
    mediator.label = field(j, "label").get<std::string>();
    const Json& tr = field(j, "transfer");
    if (!tr.is_null()) {
        Transfer transfer;
        transfer.payer = field(tr, "payer").get<int>() - 1;
        transfer.payee = field(tr, "payee").get<int>() - 1;
        transfer.amount = rat_from(field(tr, "amount"));
        mediator.transfer = transfer;
    }
    std::map<std::string, GoodId> good_id;
    for (GoodId g = 0; g < game.num_goods(); ++g) good_id[game.spec().goods[g]] = g;
    std::vector<std::map<std::vector<std::string>, int>> cells_by_player;
    for (PlayerId p = 0; p < game.num_players(); ++p) cells_by_player.push_back(cell_index(game, p));

    for (const Json& entry : field(j, "table")) {
        const Json& cells = field(entry, "cell");
        require(static_cast<int>(cells.size()) == game.num_players(), Err::ParseError,
                "cell entry must name every player's cell");
        CellKey key;
        for (PlayerId p = 0; p < game.num_players(); ++p) {
            std::vector<std::string> names;
            for (const Json& name : cells.at(p)) names.push_back(name.get<std::string>());
            std::sort(names.begin(), names.end());
            auto it = cells_by_player[p].find(names);
            require(it != cells_by_player[p].end(), Err::ParseError,
                    "cell does not match any cell of player " + std::to_string(p + 1));
            key.cells.push_back(it->second);
        }
        std::vector<RecEntry> dist;
        for (const Json& row : field(entry, "dist")) {
            RecEntry rec;
            for (const Json& name : field(row, "rec")) {
                auto it = good_id.find(name.get<std::string>());
                require(it != good_id.end(), Err::ParseError,
                        "unknown good " + name.get<std::string>());
                rec.rec.push_back(it->second);
            }
            require(static_cast<int>(rec.rec.size()) == game.num_players(), Err::ParseError,
                    "recommendation tuple must cover every player");
            rec.prob = rat_from(field(row, "p"));
            dist.push_back(std::move(rec));
        }
        canonicalize(dist);
        require(mediator.table.emplace(std::move(key), std::move(dist)).second, Err::ParseError,
                "duplicate cell entry");
    }
    return mediator;
}

Json verdict_to_json(const BneVerdict& verdict) {
    Json j;
    j["is_equilibrium"] = verdict.is_equilibrium;
    j["max_gain"] = to_string(verdict.max_gain);
    if (verdict.worst_deviator) {
        j["worst_deviator"] = *verdict.worst_deviator + 1;
    } else {
        j["worst_deviator"] = nullptr;
    }
    return j;
}

BneVerdict verdict_from_json(const Json& j) {
    BneVerdict verdict;
    verdict.is_equilibrium = field(j, "is_equilibrium").get<bool>();
    verdict.max_gain = rat_from(field(j, "max_gain"));
    const Json& who = field(j, "worst_deviator");
    if (!who.is_null()) verdict.worst_deviator = who.get<int>() - 1;
    return verdict;
}

Json report_to_json(const VerificationReport& report) {
    Json j;
    j["ic"] = verdict_to_json(report.ic);
    j["utilities"] = rats_to(report.utilities);
    j["ir_slacks"] = rats_to(report.ir_slacks);
    j["welfare"] = to_string(report.welfare);
    j["opt"] = to_string(report.opt);
    j["ratio"] = to_string(report.ratio);
    Json revealing = Json::array();
    for (PlayerId p : report.fully_revealing_to) revealing.push_back(p + 1);
    j["fully_revealing_to"] = revealing;
    j["certified"] = report.certified;
    return j;
}

VerificationReport report_from_json(const Json& j) {
    VerificationReport report;
    report.ic = verdict_from_json(field(j, "ic"));
    report.utilities = rats_from(field(j, "utilities"));
    report.ir_slacks = rats_from(field(j, "ir_slacks"));
    report.welfare = rat_from(field(j, "welfare"));
    report.opt = rat_from(field(j, "opt"));
    report.ratio = rat_from(field(j, "ratio"));
    for (const Json& p : field(j, "fully_revealing_to")) {
        report.fully_revealing_to.push_back(p.get<int>() - 1);
    }
    report.certified = field(j, "certified").get<bool>();
    return report;
}

Json scenario_to_json(const ScenarioResult& result) {
    Json j;
    Json games = Json::array();
    for (const auto& [name, game] : result.games) {
        Json g;
        g["name"] = name;
        g["game"] = game_to_json(game);
        games.push_back(g);
    }
    j["games"] = games;
    Json mediators = Json::array();
    if (!result.games.empty()) {
        const ValidatedGame game = validate_game(result.games.front().second);
        for (const auto& [name, mediator] : result.mediators) {
            Json m;
            m["name"] = name;
            m["mediator"] = mediator_to_json(mediator, game);
            mediators.push_back(m);
        }
    }
    j["mediators"] = mediators;
    Json reports = Json::array();
    for (const auto& [name, report] : result.reports) {
        Json r;
        r["name"] = name;
        r["report"] = report_to_json(report);
        reports.push_back(r);
    }
    j["reports"] = reports;
    Json claims = Json::array();
    for (const Claim& claim : result.claims) {
        Json c;
        c["id"] = claim.id;
        c["relation"] = claim.relation;
        c["observed"] = claim.observed;
        c["pass"] = claim.pass;
        claims.push_back(c);
    }
    j["claims"] = claims;
    j["all_pass"] = result.all_pass;
    return j;
}

Json sweep_to_json(const SweepSummary& summary) {
    Json j;
    Json outcomes = Json::array();
    for (const SweepOutcome& outcome : summary.outcomes) {
        Json o;
        o["seed"] = outcome.seed;
        o["pass"] = outcome.pass;
        o["detail"] = outcome.detail;
        outcomes.push_back(o);
    }
    j["outcomes"] = outcomes;
    j["passed"] = summary.passed;
    j["failed"] = summary.failed;
    return j;
}

Json feasibility_to_json(const FeasibilityVerdict& verdict) {
    Json j;
    j["necessary_pass"] = verdict.necessary_pass;
    j["violated"] = verdict.violated;
    return j;
}

Json lp_to_json(const LpSolution& solution) {
    Json j;
    j["i"] = solution.i + 1;
    j["beta_i"] = to_string(solution.beta_i);
    j["beta_j"] = to_string(solution.beta_j);
    j["beta"] = to_string(solution.beta);
    j["value"] = to_string(solution.value);
    return j;
}

Json segments_to_json(const SegmentTable& table, const SegmentStats& stats,
                      const ValidatedGame& game) {
    Json j;
    Json segments = Json::array();
    for (size_t s = 0; s < table.segments.size(); ++s) {
        Json seg;
        Json members = Json::array();
        for (TypeId t : table.segments[s]) members.push_back(game.spec().types[t]);
        seg["members"] = members;
        seg["prob"] = to_string(stats.segment_prob[s]);
        seg["top_good"] = game.spec().goods[stats.top_good[s]];
        if (stats.second_good[s] >= 0) {
            seg["second_good"] = game.spec().goods[stats.second_good[s]];
        } else {
            seg["second_good"] = nullptr;
        }
        seg["top_weight"] = to_string(stats.top_weight[s]);
        seg["second_weight"] = to_string(stats.second_weight[s]);
        seg["class"] = stats.seg_class[s] == SegmentClass::Balanced ? "balanced" : "top_heavy";
        segments.push_back(seg);
    }
    j["segments"] = segments;
    j["jointly_complete"] = table.jointly_complete;
    j["phi_top"] = to_string(stats.phi_top);
    j["phi_second"] = to_string(stats.phi_second);
    j["class_prob_balanced"] = to_string(stats.class_prob_balanced);
    j["class_prob_top_heavy"] = to_string(stats.class_prob_top_heavy);
    j["phi_top_balanced"] = to_string(stats.phi_top_balanced);
    j["phi_second_balanced"] = to_string(stats.phi_second_balanced);
    j["phi_top_heavy"] = to_string(stats.phi_top_heavy);
    j["phi_second_heavy"] = to_string(stats.phi_second_heavy);
    return j;
}

namespace {

void row(std::ostringstream& out, const std::string& name, const std::string& value) {
    out << "  " << std::left << std::setw(22) << name << value << "\n";
}

}  // namespace

std::string render_report_text(const VerificationReport& report) {
    std::ostringstream out;
    row(out, "obedient (IC)",
        report.ic.is_equilibrium ? "yes" : "no (max gain " + to_string(report.ic.max_gain) + ")");
    row(out, "utilities", to_string(report.utilities));
    row(out, "ir_slacks", to_string(report.ir_slacks));
    row(out, "welfare", to_string(report.welfare));
    row(out, "opt", to_string(report.opt));
    row(out, "ratio", to_string(report.ratio));
    std::string revealing;
    for (PlayerId p : report.fully_revealing_to) {
        if (!revealing.empty()) revealing += ", ";
        revealing += std::to_string(p + 1);
    }
    row(out, "fully_revealing_to", revealing.empty() ? "-" : revealing);
    row(out, "certified", report.certified ? "yes" : "no");
    return out.str();
}

std::string render_scenario_text(const ScenarioResult& result) {
    std::ostringstream out;
    for (const auto& [name, report] : result.reports) {
        out << name << ":\n" << render_report_text(report);
    }
    for (const Claim& claim : result.claims) {
        out << (claim.pass ? "[PASS] " : "[FAIL] ") << claim.id << ": " << claim.relation;
        if (!claim.observed.empty()) out << " [" << claim.observed << "]";
        out << "\n";
    }
    out << (result.all_pass ? "all claims pass" : "CLAIM FAILURE") << "\n";
    return out.str();
}

std::string render_sweep_text(const SweepSummary& summary) {
    std::ostringstream out;
    for (const SweepOutcome& outcome : summary.outcomes) {
        if (!outcome.pass) {
            out << "seed " << outcome.seed << " FAIL: " << outcome.detail << "\n";
        }
    }
    out << summary.passed << " passed, " << summary.failed << " failed\n";
    return out.str();
}

GameSpec load_game_file(const std::string& path) {
    return game_from_json(load_json_file(path));
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), Err::ParseError, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(Err::ParseError, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    require(out.good(), Err::ParseError, "cannot open " + path + " for writing");
    out << contents;
}

}  // namespace coopetition
