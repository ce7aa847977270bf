#pragma once

#include "evac/behaviors.hpp"
#include "evac/config.hpp"
#include "evac/grid.hpp"
#include "evac/metrics.hpp"
#include "evac/rng.hpp"
#include "evac/utilities.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace evac {

/// Complete mutable state of one run. Single-threaded by construction; runs
/// are independent, so batches parallelize across WorldStates.
struct WorldState {
    GridSpec spec;
    SimConfig config;
    PatchField field;
    std::vector<AgentState> agents; // the not-yet-evacuated
    long tick = 0;
    int evacuated = 0;
    Rng rng;
    std::vector<double> uec_by_count; // expected comfort indexed by Moore count
    Grid2D<std::int32_t> snapshot_occupancy; // tick-start copy feeding the uec field
    UecAccumulator uec_acc;

    WorldState(const GridSpec& s, const SimConfig& c)
        : spec(s), config(c), field(s), rng(c.seed),
          snapshot_occupancy(s.width, s.height, 0) {}
};

/// Builds the initial world: distance fields, agents scattered uniformly over
/// non-exit patches, policies dealt per the moving pattern, each agent bound
/// to its nearer exit, speeds seeded from the initial crowding, and the
/// expected-comfort field computed once.
WorldState initialize(const SimConfig& config, const GridSpec& spec);
WorldState initialize(const SimConfig& config); // default 68 x 20 space

/// Recomputes field.moore_counts and field.uec from a fresh snapshot of the
/// current occupancy. The field is consistent with exactly that snapshot;
/// decisions made afterwards in the same tick all see the same values.
void refresh_expected_comfort(WorldState& world);

/// One schedule step: refresh the prediction field, let every agent decide
/// and move (in a fresh random order, occupancy updated as each one moves),
/// remove agents that reached an exit band, then advance the clock and record
/// the tick's metrics. Requires at least one agent.
void advance_tick(WorldState& world);

/// Runs to completion (or to config.max_ticks, flagged as stalled).
RunRecord run_to_completion(const SimConfig& config);

/// Plain-text occupancy dump: a "tick N" header line, then one line per row,
/// top row first, each a space-separated list of per-patch agent counts.
std::string snapshot(const WorldState& world);

} // namespace evac
