#pragma once

#include "evac/utilities.hpp"

#include <cstdint>
#include <string>

namespace evac {

enum class MovingPattern : std::uint8_t { SR, RF, BneSr, BneRf };

const char* to_string(MovingPattern p);
MovingPattern parse_pattern(const std::string& name); // throws on unknown name

/// The global knobs of one simulation run. Defaults are the static column of
/// the experiment campaigns.
struct SimConfig {
    int number_persons = 2000;
    double pct_bne = 100.0;              // percent of agents using the BNE rule
    double probability_competing = 16.7; // percent, per-agent patch-entry probability
    int door_width = 6;                  // patches per exit
    double move_speed = 2.0;             // free walking speed, m/s
    double step_length = 0.7;            // m covered per tick at free speed
    double follow_radius = 3.0;          // patches, Random Follow sight range
    double weight_ud = 1.0;              // distance-utility weight in the BNE score
    MovingPattern moving_pattern = MovingPattern::BneSr;
    std::uint64_t seed = 0;
    long max_ticks = 50000;              // stall cap, never a hard error

    void validate() const; // throws std::invalid_argument

    double tick_seconds() const { return step_length / move_speed; }
    BnePredictionParams prediction_params() const {
        return {probability_competing / 100.0, weight_ud};
    }
};

} // namespace evac
