#pragma once

#include "evac/config.hpp"

#include <cstdint>

namespace evac {

struct WorldState;

/// Per-run observables, plus an echo of the configuration that produced them
/// so a record identifies its run on its own.
struct RunRecord {
    long evac_ticks = 0;
    double evac_seconds = 0.0;
    double mean_uec = 0.0;   // run mean of the per-tick occupied-patch means
    bool stalled = false;    // max_ticks reached with agents remaining
    std::uint64_t seed = 0;
    SimConfig config;
};

/// Accumulates one expected-comfort sample per tick.
class UecAccumulator {
public:
    void add_sample(double tick_mean) {
        sum_ += tick_mean;
        ++count_;
    }
    double run_mean() const { return count_ == 0 ? 0.0 : sum_ / count_; }
    long samples() const { return count_; }

private:
    double sum_ = 0.0;
    long count_ = 0;
};

/// Mean of the expected-comfort field over the patches occupied this tick
/// (each occupied patch weighted once, per the tick-start snapshot the field
/// itself was computed from). Returns the tick's sample; callers skip
/// recording when no patch is occupied.
double record_tick_uec(const WorldState& world);

} // namespace evac
