#pragma once

#include "json.hpp"

#include "coopetition/analysis.hpp"
#include "coopetition/scenarios.hpp"
#include "coopetition/sweep.hpp"

namespace coopetition {

// Insertion order is the canonical field order; identical structures always
// dump to identical bytes.
using Json = nlohmann::ordered_json;

Json game_to_json(const GameSpec& game);
GameSpec game_from_json(const Json& j);

Json mediator_to_json(const MediatorSpec& mediator, const ValidatedGame& game);
MediatorSpec mediator_from_json(const Json& j, const ValidatedGame& game);

Json verdict_to_json(const BneVerdict& verdict);
BneVerdict verdict_from_json(const Json& j);

Json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const Json& j);

Json scenario_to_json(const ScenarioResult& result);
Json sweep_to_json(const SweepSummary& summary);
Json feasibility_to_json(const FeasibilityVerdict& verdict);
Json lp_to_json(const LpSolution& solution);
Json segments_to_json(const SegmentTable& table, const SegmentStats& stats,
                      const ValidatedGame& game);

std::string render_report_text(const VerificationReport& report);
std::string render_scenario_text(const ScenarioResult& result);
std::string render_sweep_text(const SweepSummary& summary);

GameSpec load_game_file(const std::string& path);
Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace coopetition
