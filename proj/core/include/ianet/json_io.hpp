#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ianet/netsim.hpp"
#include "ianet/pipeline.hpp"
#include "ianet/planner.hpp"

namespace ianet {

// Structured-config round trips. All parsers reject unknown keys and throw
// ConfigError naming the offending key; emitters produce deterministic output
// (sorted keys, shortest round-trip numbers) so repeated runs are byte-identical.

PipelineSpec parse_pipeline_json(const std::string& text);
std::string pipeline_to_json(const PipelineSpec& spec);
PipelineSpec load_pipeline_file(const std::filesystem::path& path);

PartitionPlan parse_plan_json(const std::string& text);
std::string plan_to_json(const PartitionPlan& plan);
PartitionPlan load_plan_file(const std::filesystem::path& path);

/// Loads every scenario in a scenario file. Pipeline references ("canonical",
/// "reference", or {"file": ...} relative to the scenario file) and
/// plan references ("auto", {"file": ...}, or inline) are resolved here.
std::vector<Scenario> load_scenario_file(const std::filesystem::path& path);

/// Batch result (with per-run times, summaries, link usage) as a JSON document.
std::string report_to_json(const Scenario& scenario, const BatchResult& batch);

} // namespace ianet
