#pragma once

#include "evac/engine.hpp"
#include "evac/metrics.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace evac {

/// One swept parameter and the values it takes, kept as the literal strings
/// from the plan so CSV output and grouping stay canonical.
struct SweepAxis {
    std::string param;
    std::vector<std::string> values;
};

/// A declarative batch: a base configuration, a grid of parameter overrides
/// (the cross-product of the axes), and a replication count. Seeds are a pure
/// function of (master_seed, grid cell, replicate), so any subset of the
/// batch reproduces in isolation.
struct ExperimentPlan {
    std::string name = "plan";
    SimConfig base;
    std::vector<SweepAxis> sweeps;
    int replications = 1;
    std::uint64_t master_seed = 0;
    std::string output_path; // optional; the CLI can override
};

/// Assigns one configuration field from its textual form. Field names match
/// the plan-file and CSV vocabulary (number_persons, pct_bne,
/// probability_competing, door_width, move_speed, step_length, follow_radius,
/// weight_ud, moving_pattern, seed, max_ticks). Throws on unknown names or
/// unparseable values.
void apply_config_field(SimConfig& config, const std::string& key,
                        const std::string& value);

/// Plan-file grammar, line oriented:
///   # comment
///   name = experiment1
///   replications = 50
///   master_seed = 1001
///   output = experiment1.csv
///   <config field> = <value>          base-configuration assignment
///   sweep <config field> = a, b, c    explicit value list
///   sweep <config field> = 0:100:2    inclusive start:stop:step range
ExperimentPlan parse_plan(std::istream& in, const std::string& source_name);
ExperimentPlan parse_plan_file(const std::string& path);

struct PlannedRun {
    SimConfig config; // seed already derived
    long cell = 0;
    int replicate = 0;
};

/// Expands the plan into its full run list: cell-major (first axis slowest),
/// replicates innermost. Every expanded configuration is validated.
std::vector<PlannedRun> expand(const ExperimentPlan& plan);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs the whole plan with at most `parallelism` concurrent runs and writes
/// the results table to `out` in expansion order, one CSV row per run:
///   name,pattern,number_persons,pct_bne,replicate,seed,evac_ticks,
///   evac_seconds,mean_uec,stalled
/// Stalled runs become rows with stalled=true; they never abort the batch.
/// The bytes written are independent of `parallelism`.
void execute(const ExperimentPlan& plan, int parallelism, std::ostream& out,
             const ProgressFn& progress = nullptr);

} // namespace evac
