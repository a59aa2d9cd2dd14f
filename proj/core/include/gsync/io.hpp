#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "gsync/analysis.hpp"
#include "gsync/gen.hpp"

namespace gsync {

using json = nlohmann::json;

json group_spec_to_json(const GroupSpec& spec);
GroupSpec group_spec_from_json(const json& j);

json graph_config_to_json(const GraphConfig& cfg);
GraphConfig graph_config_from_json(const json& j);

json noise_config_to_json(const NoiseConfig& cfg);
NoiseConfig noise_config_from_json(const json& j);

json block_column_to_json(const BlockColumn& G);
BlockColumn block_column_from_json(const json& j, int n, int d);

json instance_to_json(const Instance& instance);
Instance instance_from_json(const json& j);

void write_instance(const std::filesystem::path& path, const Instance& instance);
Instance read_instance(const std::filesystem::path& path);

/// Generation config: {"spec": ..., "graph": {...}, "noise": {...}, "seed": ...}
struct GenerateConfig {
    GroupSpec spec;
    GraphConfig graph;
    NoiseConfig noise;
    std::uint64_t seed = 0;
};
GenerateConfig generate_config_from_json(const json& j);
json generate_config_to_json(const GenerateConfig& cfg);

/// Experiment config: a generation config plus one sweep axis and a trial
/// count. The sweep parameter is applied per value before each trial.
struct ExperimentConfig {
    GenerateConfig base;
    SolveConfig solve;
    std::string sweep_param;  // one of: n, p, sigma, bound, q, one_minus_q, gamma, delta, m
    std::vector<double> sweep_values;
    int trials = 30;
    std::uint64_t seed_base = 0;
};
ExperimentConfig experiment_config_from_json(const json& j);

/// Applies one sweep value to a copy of the base generation config.
GenerateConfig apply_sweep(const GenerateConfig& base, const std::string& param, double value);

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace);

json master_report_to_json(const MasterReport& report);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace gsync
