// Command-line front end: parse game files, build mediators, certify claims.
//
// Exit codes: 0 success and all claims pass, 1 claim failure, 2 input error.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "coopetition/serialize.hpp"

using namespace coopetition;

namespace {

std::vector<Rat> parse_rational_list(const std::string& csv) {
    std::vector<Rat> out;
    size_t start = 0;
    while (start <= csv.size()) {
        const size_t comma = csv.find(',', start);
        const std::string item =
            csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(parse_rational(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

MediatorSpec build_mediator(const ValidatedGame& game, const std::string& label,
                            const std::vector<Rat>& v) {
    if (label == "no_amazon") return mediator_no_amazon(game, v);
    if (label == "amazon") return mediator_amazon(game, v);
    if (label == "separating") return mediator_separating(game, v);
    if (label == "pooling") return mediator_pooling(game, v);
    if (label == "classwise") return mediator_classwise(game, v);
    if (label == "transfer") return transfer_mediator(game, v);
    if (label == "full") return full_revelation_mediator(game);
    if (label == "nplayer") {
        const auto equilibria = enumerate_pure_bne(game);
        require(!equilibria.empty(), Err::NoPureBne, "no pure equilibrium to build on");
        return mediator_nplayer(game, equilibria.front().profile);
    }
    fail(Err::ParseError, "unknown mediator label: " + label);
}

void emit(const Json& j, const std::string& text, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact construction and certification of data-sharing mediators"};
    app.require_subcommand(1);

    std::string game_path, mediator_label = "amazon", mediator_file, out_path, v_csv;
    std::string format = "text", profile_name = "jci_A", which = "with_amazon", fail_dir;
    std::string scenario_name, environment;
    std::uint64_t seed = 1;
    int count = 100, nplayers = 3;
    bool amazon = false, serial = false;
    std::string alpha = "11/20", beta = "5/20", gamma = "3/20", delta = "1/20", eps = "1/4";

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    };
    auto add_env = [&](CLI::App* cmd) {
        cmd->add_option("--env", environment,
                        "override the game file's outside-competitor flag")
            ->check(CLI::IsMember({"amazon", "none"}));
    };

    CLI::App* validate = app.add_subcommand("validate", "check a game file's invariants");
    validate->add_option("--game", game_path)->required();
    add_format(validate);

    CLI::App* segments = app.add_subcommand("segments", "joint-information segments and weights");
    segments->add_option("--game", game_path)->required();
    add_env(segments);
    add_format(segments);

    CLI::App* feasible = app.add_subcommand("feasible", "necessary participation conditions");
    feasible->add_option("--game", game_path)->required();
    feasible->add_option("--v", v_csv, "base values as p/q,p/q");
    add_env(feasible);
    add_format(feasible);

    CLI::App* mediate = app.add_subcommand("mediate", "construct a mediator");
    mediate->add_option("--game", game_path)->required();
    mediate->add_option("--mediator", mediator_label, "construction label");
    mediate->add_option("--v", v_csv);
    mediate->add_option("--out", out_path, "write the mediator to this file");
    add_env(mediate);
    add_format(mediate);

    CLI::App* verify = app.add_subcommand("verify", "certify a mediator on a game");
    verify->add_option("--game", game_path)->required();
    verify->add_option("--mediator", mediator_label, "construction label");
    verify->add_option("--mediator-file", mediator_file, "serialized mediator to check");
    verify->add_option("--v", v_csv);
    add_env(verify);
    add_format(verify);

    CLI::App* opt = app.add_subcommand("opt", "welfare upper bound over all mediators");
    opt->add_option("--game", game_path)->required();
    add_env(opt);
    add_format(opt);

    CLI::App* bne = app.add_subcommand("bne", "enumerate pure equilibria of the unmediated game");
    bne->add_option("--game", game_path)->required();
    add_env(bne);
    add_format(bne);

    CLI::App* scenario = app.add_subcommand("scenario", "run a named construction");
    scenario
        ->add_option("name", scenario_name,
                     "one of intro_example, example_ir, example_ic, sharing_comparison, "
                     "nplayer_claim")
        ->required();
    scenario->add_option("--eps", eps);
    scenario->add_option("--alpha", alpha);
    scenario->add_option("--beta", beta);
    scenario->add_option("--gamma", gamma);
    scenario->add_option("--delta", delta);
    scenario->add_flag("--amazon", amazon, "include the outside competitor");
    scenario->add_option("--which", which)
        ->check(CLI::IsMember({"with_amazon", "without_amazon"}));
    scenario->add_option("--n", nplayers);
    scenario->add_option("--v", v_csv);
    add_format(scenario);

    CLI::App* sweep = app.add_subcommand("sweep", "seeded random-instance certification");
    sweep->add_option("--profile", profile_name,
                      "jci_noA, jci_A, nojci_S1, nojci_S2, nojci_mixed, nplayer, transfer");
    sweep->add_option("--count", count);
    sweep->add_option("--seed", seed);
    sweep->add_option("--n", nplayers);
    sweep->add_flag("--serial", serial, "disable the parallel runner");
    sweep->add_option("--fail-dir", fail_dir, "write failing instances here for replay");
    add_format(sweep);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            const ValidatedGame game = validate_game(load_game_file(game_path));
            emit(Json{{"valid", true}}, "valid\n", format);
            return 0;
        }
        if (segments->parsed()) {
            GameSpec spec = load_game_file(game_path);
            if (!environment.empty()) spec.amazon_present = environment == "amazon";
            const ValidatedGame game = validate_game(spec);
            const SegmentTable table = build_segments(game);
            const SegmentStats stats = segment_stats(table, game);
            const Json j = segments_to_json(table, stats, game);
            emit(j, j.dump(2) + "\n", format);
            return 0;
        }

        if (feasible->parsed() || mediate->parsed() || verify->parsed() || opt->parsed() ||
            bne->parsed()) {
            GameSpec spec = load_game_file(game_path);
            if (!environment.empty()) spec.amazon_present = environment == "amazon";
            const ValidatedGame game = validate_game(spec);
            const std::vector<Rat> v =
                v_csv.empty() ? game.base_values() : parse_rational_list(v_csv);

            if (feasible->parsed()) {
                const FeasibilityVerdict verdict = feasibility(game, v);
                std::string text = verdict.necessary_pass ? "necessary conditions pass\n" : "";
                for (const auto& violated : verdict.violated) {
                    text += "violated: " + violated + "\n";
                }
                emit(feasibility_to_json(verdict), text, format);
                return verdict.necessary_pass ? 0 : 1;
            }
            if (mediate->parsed()) {
                const MediatorSpec mediator = build_mediator(game, mediator_label, v);
                const Json j = mediator_to_json(mediator, game);
                if (!out_path.empty()) write_text_file(out_path, j.dump(2) + "\n");
                emit(j, j.dump(2) + "\n", format);
                return 0;
            }
            if (verify->parsed()) {
                const MediatorSpec mediator =
                    mediator_file.empty()
                        ? build_mediator(game, mediator_label, v)
                        : mediator_from_json(load_json_file(mediator_file), game);
                const VerificationReport report = verify_mediator(game, mediator, v);
                emit(report_to_json(report), render_report_text(report), format);
                return report.certified ? 0 : 1;
            }
            if (opt->parsed()) {
                const Rat value = opt_benchmark(game);
                emit(Json{{"opt", to_string(value)}}, to_string(value) + "\n", format);
                return 0;
            }
            const auto equilibria = enumerate_pure_bne(game);
            Json rows = Json::array();
            std::string text;
            for (const PureBne& eq : equilibria) {
                Json row;
                row["utilities"] = Json::array();
                Rat welfare(0);
                for (const Rat& u : eq.utilities) {
                    row["utilities"].push_back(to_string(u));
                    welfare += u;
                }
                row["welfare"] = to_string(welfare);
                Json actions = Json::array();
                for (PlayerId p = 0; p < game.num_players(); ++p) {
                    Json per_cell = Json::array();
                    for (int c = 0; c < game.num_cells(p); ++c) {
                        const GoodDist& dist =
                            eq.profile.players[p].at(InfoSetKey{c, kNoMessage});
                        per_cell.push_back(game.spec().goods[dist.front().first]);
                    }
                    actions.push_back(per_cell);
                }
                row["actions"] = actions;
                rows.push_back(row);
                text += to_string(eq.utilities) + " welfare " + to_string(welfare) + "\n";
            }
            emit(rows, text + std::to_string(equilibria.size()) + " pure equilibria\n", format);
            return 0;
        }

        if (scenario->parsed()) {
            ScenarioResult result;
            if (scenario_name == "intro_example") {
                result = intro_example(parse_rational(alpha), parse_rational(beta),
                                       parse_rational(gamma), parse_rational(delta), amazon);
            } else if (scenario_name == "example_ir") {
                result = example_ir(parse_rational(eps));
            } else if (scenario_name == "example_ic") {
                result = example_ic(parse_rational(eps));
            } else if (scenario_name == "sharing_comparison") {
                result = sharing_comparison(which == "with_amazon"
                                                ? SharingSetting::MoreSharingWithCompetitor
                                                : SharingSetting::MoreSharingWithoutCompetitor);
            } else if (scenario_name == "nplayer_claim") {
                std::vector<Rat> v;
                if (v_csv.empty()) {
                    v.assign(nplayers, rat(1, nplayers + 1));
                } else {
                    v = parse_rational_list(v_csv);
                }
                result = nplayer_claim(nplayers, v);
            } else {
                fail(Err::ParseError, "unknown scenario: " + scenario_name);
            }
            emit(scenario_to_json(result), render_scenario_text(result), format);
            return result.all_pass ? 0 : 1;
        }

        if (sweep->parsed()) {
            SweepConfig config;
            config.profile = parse_instance_profile(profile_name);
            config.seed_start = seed;
            config.count = count;
            config.parallel = !serial;
            config.nplayers = nplayers;
            const SweepSummary summary = run_sweep(config);
            if (!fail_dir.empty() && summary.failed > 0) {
                std::filesystem::create_directories(fail_dir);
                for (const SweepOutcome& outcome : summary.outcomes) {
                    if (outcome.pass) continue;
                    const RandomInstance failing =
                        random_instance(outcome.seed, config.profile, config.nplayers);
                    write_text_file(fail_dir + "/" + profile_name + "_seed" +
                                        std::to_string(outcome.seed) + ".json",
                                    game_to_json(failing.game).dump(2) + "\n");
                }
            }
            emit(sweep_to_json(summary), render_sweep_text(summary), format);
            return summary.failed == 0 ? 0 : 1;
        }
    } catch (const EngineError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
